#!/usr/bin/env python3
"""Generate RNG oracle fixtures from CPython's random module.

The harness reimplements CPython's ``random.Random`` seeding, bit draws,
and ``sample()`` selection so that instance sampling is reproducible
without a Python runtime. These fixtures pin the expected outputs; they
are committed and the test suite never invokes Python.

Run from the repository root:

    python3 scripts/gen_rng_fixtures.py

Outputs:
    data/oracles/rng.json      -- word/bit-draw oracles and stream splices
    data/oracles/samples.jsonl -- one record per (seed, n, k) sample call
"""

import json
import os
import random
import sys

OUT_DIR = os.path.join(os.path.dirname(__file__), "..", "data", "oracles")

# (seed, n, k) triples covering both selection branches: the seen-set
# rejection branch (large n) and the partial-Fisher-Yates pool branch
# (n <= 21 + 4**ceil(log4(3k))).
SAMPLE_CASES = [
    (1234, 10042, 1000),
    (1234, 2376, 1000),
    (1234, 3270, 1000),
    (1234, 1838, 1000),
    (1234, 1954, 1000),
    (1234, 20, 10),
    (1234, 16, 16),
    (7, 1500, 25),
    (0, 97, 5),
]


def gen_samples(path):
    with open(path, "w") as f:
        for seed, n, k in SAMPLE_CASES:
            rng = random.Random(seed)
            indices = rng.sample(range(n), k)
            # Next 32-bit word after sampling, to pin exact draw consumption.
            next_word = rng.getrandbits(32)
            rec = {
                "seed": seed,
                "n": n,
                "k": k,
                "indices": indices,
                "next_word": next_word,
            }
            f.write(json.dumps(rec, separators=(",", ":")) + "\n")


def gen_rng(path):
    fixtures = {}

    rng = random.Random(1234)
    fixtures["seed_1234_first_word"] = rng.getrandbits(32)

    rng = random.Random(1234)
    fixtures["seed_1234_first_words"] = [rng.getrandbits(32) for _ in range(10)]

    rng = random.Random(1234)
    fixtures["seed_1234_getrandbits_11"] = [rng.getrandbits(11) for _ in range(3)]

    rng = random.Random(1234)
    fixtures["seed_1234_randbelow_10042"] = rng._randbelow(10042)

    rng = random.Random(0)
    fixtures["seed_0_first_word"] = rng.getrandbits(32)

    # Multi-limb seed: 2**40 + 7 splits into two little-endian 32-bit limbs.
    rng = random.Random(2**40 + 7)
    fixtures["seed_2p40p7_first_word"] = rng.getrandbits(32)

    rng = random.Random(19650218)
    fixtures["seed_19650218_first_word"] = rng.getrandbits(32)

    with open(path, "w") as f:
        json.dump(fixtures, f, indent=2, sort_keys=True)
        f.write("\n")


def main():
    os.makedirs(OUT_DIR, exist_ok=True)
    gen_samples(os.path.join(OUT_DIR, "samples.jsonl"))
    gen_rng(os.path.join(OUT_DIR, "rng.json"))
    print("wrote fixtures to", os.path.normpath(OUT_DIR))
    print("python:", sys.version)


if __name__ == "__main__":
    main()
