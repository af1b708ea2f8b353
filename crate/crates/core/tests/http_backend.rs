//! HTTP backend against a minimal in-process completions server.
//!
//! The stub tokenizes per character (every char offset starts a token), which
//! exercises the boundary alignment and summation paths without a model.

use std::io::{BufRead, BufReader, Read, Write};
use std::net::TcpListener;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use mceval_core::{
    score_batch, BackendDescriptor, BackendKind, HttpBackend, RetryPolicy, ScoreRequest,
    ScoringBackend,
};

struct Stub {
    port: u16,
    requests_seen: Arc<AtomicUsize>,
}

/// Serve `n_requests` HTTP requests, failing the first `fail_first` of them
/// with a 500, then exit.
fn spawn_stub(n_requests: usize, fail_first: usize) -> Stub {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let port = listener.local_addr().unwrap().port();
    let requests_seen = Arc::new(AtomicUsize::new(0));
    let seen = Arc::clone(&requests_seen);
    std::thread::spawn(move || {
        for _ in 0..n_requests {
            let (stream, _) = match listener.accept() {
                Ok(pair) => pair,
                Err(_) => return,
            };
            let mut reader = BufReader::new(stream);
            let mut request_line = String::new();
            if reader.read_line(&mut request_line).is_err() {
                continue;
            }
            let mut content_length = 0usize;
            loop {
                let mut line = String::new();
                if reader.read_line(&mut line).is_err() {
                    break;
                }
                let line = line.trim_end();
                if line.is_empty() {
                    break;
                }
                if let Some(value) = line.to_ascii_lowercase().strip_prefix("content-length:") {
                    content_length = value.trim().parse().unwrap_or(0);
                }
            }
            let mut body = vec![0u8; content_length];
            reader.read_exact(&mut body).ok();
            let body: serde_json::Value = serde_json::from_slice(&body).unwrap_or_default();

            let idx = seen.fetch_add(1, Ordering::SeqCst);
            let mut stream = reader.into_inner();
            if idx < fail_first {
                let payload = b"HTTP/1.1 500 Internal Server Error\r\nContent-Length: 0\r\nConnection: close\r\n\r\n";
                stream.write_all(payload).ok();
                continue;
            }

            let response_body = if request_line.starts_with("POST /tokenize") {
                let text = body
                    .get("prompt")
                    .and_then(|v| v.as_str())
                    .unwrap_or_default();
                serde_json::json!({ "count": text.chars().count() }).to_string()
            } else {
                let prompt = body
                    .get("prompt")
                    .and_then(|v| v.as_str())
                    .unwrap_or_default();
                let chars: Vec<char> = prompt.chars().collect();
                let offsets: Vec<usize> = (0..chars.len()).collect();
                let mut logprobs: Vec<serde_json::Value> = Vec::with_capacity(chars.len());
                for (i, _) in chars.iter().enumerate() {
                    if i == 0 {
                        logprobs.push(serde_json::Value::Null);
                    } else {
                        logprobs.push(serde_json::json!(-0.125));
                    }
                }
                serde_json::json!({
                    "choices": [{
                        "text": "",
                        "logprobs": {
                            "tokens": chars.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                            "token_logprobs": logprobs,
                            "text_offset": offsets,
                        }
                    }]
                })
                .to_string()
            };
            let response = format!(
                "HTTP/1.1 200 OK\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{}",
                response_body.len(),
                response_body
            );
            stream.write_all(response.as_bytes()).ok();
        }
    });
    Stub {
        port,
        requests_seen,
    }
}

fn descriptor(port: u16) -> BackendDescriptor {
    BackendDescriptor {
        kind: BackendKind::Http,
        endpoint: Some(format!("http://127.0.0.1:{port}")),
        model_name: "stub-model".into(),
        add_bos: false,
        max_parallel: 1,
        retry: RetryPolicy {
            max_attempts: 3,
            base_backoff: std::time::Duration::from_millis(5),
        },
        archive: None,
    }
}

fn request(context: &str, continuation: &str) -> ScoreRequest {
    ScoreRequest {
        request_id: mceval_core::render::request_id(context, continuation),
        context: std::sync::Arc::from(context),
        continuation: continuation.to_owned(),
        role: mceval_core::RequestRole::CfChoice,
        choice_index: 0,
        task_id: "toy".into(),
        source_row: 0,
    }
}

#[test]
fn scores_continuation_tokens_after_the_boundary() {
    let stub = spawn_stub(1, 0);
    let backend = HttpBackend::from_descriptor(&descriptor(stub.port)).unwrap();
    // Context of 7 chars, continuation of 4 chars -> 4 scored tokens.
    let out = score_batch(&backend, &[request("Answer:", " yes")], 1).unwrap();
    assert_eq!(out[0].token_count, 4);
    assert_eq!(out[0].logprob_sum, -0.5);
    assert_eq!(out[0].char_count, 4);
}

#[test]
fn retries_transient_failures() {
    let stub = spawn_stub(3, 2);
    let backend = HttpBackend::from_descriptor(&descriptor(stub.port)).unwrap();
    let out = score_batch(&backend, &[request("abc", " d")], 1).unwrap();
    assert_eq!(out[0].token_count, 2);
    assert_eq!(stub.requests_seen.load(Ordering::SeqCst), 3);
}

#[test]
fn exhausted_retries_identify_the_request() {
    let stub = spawn_stub(3, 3);
    let backend = HttpBackend::from_descriptor(&descriptor(stub.port)).unwrap();
    let req = request("abc", " d");
    let id = req.request_id.clone();
    let err = score_batch(&backend, &[req], 1).unwrap_err();
    let message = err.to_string();
    assert!(message.contains(&id), "{message}");
}

#[test]
fn token_counting_uses_the_tokenize_route() {
    let stub = spawn_stub(1, 0);
    let backend = HttpBackend::from_descriptor(&descriptor(stub.port)).unwrap();
    assert_eq!(backend.count_tokens("hello world").unwrap(), 11);
}

#[test]
fn missing_tokenize_route_reports_window_check_unavailable() {
    // Nothing listens on this port: counting must fail as a window-check
    // availability error, never as a silent pass.
    let backend = HttpBackend::from_descriptor(&descriptor(1)).unwrap();
    match backend.count_tokens("text") {
        Err(mceval_core::Error::WindowCheckUnavailable(_)) => {}
        other => panic!("expected window-check error, got {other:?}"),
    }
}
