#!/usr/bin/env python3
"""Generate the bundled task suite: config, instance files, and shot files.

The corpus layout (splits, instance totals, per-task sampling caps, choice
counts, normalization schemes, prompt styles) matches the published
benchmark suite this harness targets. Instance and shot *content* is
synthetic filler, deterministic in the row index, except for row 0 of each
task (rows 0-1 for arc_challenge), which hold the documented example
instances that the golden prompt fixtures are transcribed from.

Run from the repository root:

    python3 scripts/gen_task_data.py

Outputs:
    data/config/tasks.json
    data/instances/<task>.jsonl, data/instances/mmlu/<subject>.jsonl
    data/shots/<task>.jsonl, data/shots/mmlu/<subject>.jsonl
    data/golden/prompts/*.txt
    data/analysis/norm_scores.json, data/analysis/recommended_diff.json
"""

import json
import os

ROOT = os.path.normpath(os.path.join(os.path.dirname(__file__), ".."))
DATA = os.path.join(ROOT, "data")

# ---------------------------------------------------------------------------
# MMLU subjects with their test-split sizes (sum = 14042).

MMLU_SUBJECTS = [
    ("abstract_algebra", 100),
    ("anatomy", 135),
    ("astronomy", 152),
    ("business_ethics", 100),
    ("clinical_knowledge", 265),
    ("college_biology", 144),
    ("college_chemistry", 100),
    ("college_computer_science", 100),
    ("college_mathematics", 100),
    ("college_medicine", 173),
    ("college_physics", 102),
    ("computer_security", 100),
    ("conceptual_physics", 235),
    ("econometrics", 114),
    ("electrical_engineering", 145),
    ("elementary_mathematics", 378),
    ("formal_logic", 126),
    ("global_facts", 100),
    ("high_school_biology", 310),
    ("high_school_chemistry", 203),
    ("high_school_computer_science", 100),
    ("high_school_european_history", 165),
    ("high_school_geography", 198),
    ("high_school_government_and_politics", 193),
    ("high_school_macroeconomics", 390),
    ("high_school_mathematics", 270),
    ("high_school_microeconomics", 238),
    ("high_school_physics", 151),
    ("high_school_psychology", 545),
    ("high_school_statistics", 216),
    ("high_school_us_history", 204),
    ("high_school_world_history", 237),
    ("human_aging", 223),
    ("human_sexuality", 131),
    ("international_law", 121),
    ("jurisprudence", 108),
    ("logical_fallacies", 163),
    ("machine_learning", 112),
    ("management", 103),
    ("marketing", 234),
    ("medical_genetics", 100),
    ("miscellaneous", 783),
    ("moral_disputes", 346),
    ("moral_scenarios", 895),
    ("nutrition", 306),
    ("philosophy", 311),
    ("prehistory", 324),
    ("professional_accounting", 282),
    ("professional_law", 1534),
    ("professional_medicine", 272),
    ("professional_psychology", 612),
    ("public_relations", 110),
    ("security_studies", 245),
    ("sociology", 201),
    ("us_foreign_policy", 100),
    ("virology", 166),
    ("world_religions", 171),
]

assert len(MMLU_SUBJECTS) == 57
assert sum(n for _, n in MMLU_SUBJECTS) == 14042, sum(n for _, n in MMLU_SUBJECTS)

# ---------------------------------------------------------------------------
# Documented example instances (row 0 of each task; arc_challenge also row 1).

ARC_C_ROW0 = {
    "question": "George wants to warm his hands quickly by rubbing them. Which skin surface will produce the most heat?",
    "choices": ["dry palms", "wet palms", "palms covered with oil", "palms covered with lotion"],
    "gold": 0,
}
ARC_C_ROW1 = {
    "question": "A boat is acted on by a river current flowing north and by wind blowing on its sails. The boat travels northeast. In which direction is the wind most likely applying force to the sails of the boat?",
    "choices": ["east", "north", "northeast", "west"],
    "gold": 0,
}
ARC_E_ROW0 = {
    "question": "Lichens are symbiotic organisms made of green algae and fungi. What do the green algae supply to the fungi in this symbiotic relationship?",
    "choices": ["carbon dioxide", "food", "protection", "water"],
    "gold": 1,
}
BOOLQ_ROW0 = {
    "passage": "Persian language -- Persian, also known by its endonym Farsi, is one of the Western Iranian languages within the Indo-Iranian branch of the Indo-European language family. It is primarily spoken in Iran, Afghanistan (officially known as Dari since 1958), and Tajikistan (officially known as Tajiki since the Soviet era), and some other regions which historically were Persianate societies and considered part of Greater Iran. It is written in the Persian alphabet, a modified variant of the Arabic script, which itself evolved from the Aramaic alphabet.",
    "question": "do iran and afghanistan speak the same language?",
    "choices": ["yes", "no"],
    "gold": 0,
}
CSQA_ROW0 = {
    "question": "Sammy wanted to go to where the people were.  Where might he go?",
    "choices": ["race track", "populated areas", "the desert", "apartment", "roadblock"],
    "gold": 1,
}
HSWAG_ROW0 = {
    "activity_label": "Health",
    "ctx": "How to cope with suicidal thoughts. Put off any plans. Promise yourself that you'll wait 48 hours before doing anything. Remember, thoughts don't have the power to force you to act.",
    "choices": [
        "Even when you do, there may be a small image of the future still lurking around your brain. For instance, don't tell yourself that you can't make it.",
        "You're doing something, and no one can force you to act. It's completely natural to feel negative thoughts before you act.",
        "Do not panic if people talk to you (even if it's about quitting smoking). Have a plan for how you're going to react to a group of people who bring on suicidal thoughts.",
        "Sometimes extreme pain can distort our perception. Waiting before taking action will give your mind time to clear.",
    ],
    "gold": 3,
}
MMLU_AA_ROW0 = {
    "question": "Find all c in Z_3 such that Z_3[x]/(x^2 + c) is a field.",
    "choices": ["0", "1", "2", "3"],
    "gold": 1,
}
OBQA_ROW0 = {
    "question": "When standing miles away from Mount Rushmore",
    "choices": [
        "the mountains seem very close",
        "the mountains are boring",
        "the mountains look the same as from up close",
        "the mountains seem smaller than in photographs",
    ],
    "gold": 3,
}
PIQA_ROW0 = {
    "goal": "how do you stab something?",
    "choices": ["stick a sharp object through it.", "pin it with a sharp object."],
    "gold": 0,
}
SIQA_ROW0 = {
    "question": "Cameron decided to have a barbecue and gathered her friends together. How would Others feel as a result?",
    "choices": ["like attending", "like staying home", "a good friend to have"],
    "gold": 0,
}
WINOG_ROW0 = {
    "sentence": "John moved the couch from the garage to the backyard to create space. The ___ is small.",
    "choices": ["garage", "backyard"],
    "gold": 0,
}

# Curated arc_challenge shots (gold answer strings are the documented ones;
# distractor choices are synthetic).
ARC_C_SHOTS = [
    {
        "question": "George wants to warm his hands quickly by rubbing them. Which skin surface will produce the most heat?",
        "choices": ["dry palms", "wet palms", "palms covered with oil", "palms covered with lotion"],
        "gold": 0,
        "split": "train",
    },
    {
        "question": "Which of the following statements best explains why magnets usually stick to a refrigerator door?",
        "choices": [
            "The refrigerator door is smooth.",
            "The refrigerator door contains iron.",
            "The refrigerator door is a good conductor.",
            "The refrigerator door has electric wires in it.",
        ],
        "gold": 1,
        "split": "train",
    },
    {
        "question": "A fold observed in layers of sedimentary rock most likely resulted from the",
        "choices": [
            "cooling of flowing magma.",
            "collision of tectonic plates.",
            "converging of crustal plates.",
            "deposition of river sediments.",
        ],
        "gold": 2,
        "split": "train",
    },
    {
        "question": "Which of these do scientists offer as the most recent explanation as to why many plants and animals died out at the end of the Mesozoic era?",
        "choices": [
            "worldwide disease",
            "global mountain building",
            "rise of mammals that preyed upon plants and animals",
            "impact of an asteroid created dust that blocked the sunlight",
        ],
        "gold": 3,
        "split": "train",
    },
    {
        "question": "Which of the following is a trait that a dog does NOT inherit from its parents?",
        "choices": ["the length of its fur", "the shape of its nose", "the size of its appetite", "the color of its fur"],
        "gold": 2,
        "split": "train",
    },
]

# ---------------------------------------------------------------------------
# Synthetic filler records.


def qa_record(task_id, i, n_choices):
    return {
        "question": "Synthetic %s question %d: which option is labeled %d?" % (task_id, i, i),
        "choices": ["entry %d option %d" % (i, j) for j in range(n_choices)],
        "gold": i % n_choices,
    }


def arc_record(task_id, i):
    # A few rows use 3 or 5 choices; the rest use 4.
    if i % 97 == 13:
        n = 3
    elif i % 101 == 17:
        n = 5
    else:
        n = 4
    return qa_record(task_id, i, n)


def boolq_record(i):
    return {
        "passage": "Synthetic passage %d. Reference works state that item %d belongs to group %d." % (i, i, i % 7),
        "question": "does item %d belong to group %d?" % (i, i % 7),
        "choices": ["yes", "no"],
        "gold": i % 2,
    }


def hellaswag_record(i):
    return {
        "activity_label": "Topic %d" % (i % 24),
        "ctx": "How to finish synthetic procedure %d. Start by preparing the parts. Then check step %d." % (i, i % 9),
        "choices": ["Ending %d for entry %d." % (j, i) for j in range(4)],
        "gold": i % 4,
    }


def piqa_record(i):
    return {
        "goal": "how do you complete synthetic step %d?" % i,
        "choices": ["use method %d directly." % i, "use method %d in reverse." % i],
        "gold": i % 2,
    }


def winogrande_record(i):
    return {
        "sentence": "Synthetic subject %d moved things from the box to the shelf because the ___ was full." % i,
        "choices": ["box", "shelf"],
        "gold": i % 2,
    }


def make_records(task_id, total, n_choices):
    rows = []
    for i in range(total):
        if task_id in ("arc_challenge", "arc_easy"):
            rows.append(arc_record(task_id, i))
        elif task_id == "boolq":
            rows.append(boolq_record(i))
        elif task_id == "hellaswag":
            rows.append(hellaswag_record(i))
        elif task_id == "piqa":
            rows.append(piqa_record(i))
        elif task_id == "winogrande":
            rows.append(winogrande_record(i))
        else:
            rows.append(qa_record(task_id, i, n_choices))
    return rows


def make_shots(task_id, n_choices, maker):
    shots = []
    for i in range(5):
        rec = maker(i)
        rec["split"] = "train"
        shots.append(rec)
    return shots


def write_jsonl(path, records):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w") as f:
        for rec in records:
            f.write(json.dumps(rec, separators=(",", ":"), ensure_ascii=False) + "\n")


# ---------------------------------------------------------------------------
# Task table: id, split, total, cap, choices ("variable" or int), norm, style.

TASKS = [
    ("arc_challenge", "test", 1172, None, "variable", "pmi", "qa"),
    ("arc_easy", "test", 2376, 1000, "variable", "char", "qa"),
    ("boolq", "validation", 3270, 1000, 2, "none", "qa"),
    ("csqa", "validation", 1221, None, 5, "pmi", "qa"),
    ("hellaswag", "validation", 10042, 1000, 4, "char", "continuation"),
    ("mmlu", "test", 14042, None, 4, "char", "qa"),
    ("obqa", "test", 500, None, 4, "pmi", "qa"),
    ("piqa", "validation", 1838, 1000, 2, "char", "qa"),
    ("siqa", "validation", 1954, 1000, 3, "char", "qa"),
    ("winogrande", "validation", 1267, None, 2, "none", "blank_fill"),
]


def field_map_for(task_id):
    if task_id == "boolq":
        return {"question": "question", "context": {"key": "passage"}, "choices": "choices", "gold": "gold"}
    if task_id == "hellaswag":
        return {
            "question": None,
            "context": {"parts": ["activity_label", "ctx"], "sep": ": "},
            "choices": "choices",
            "gold": "gold",
        }
    if task_id == "piqa":
        return {"question": "goal", "context": None, "choices": "choices", "gold": "gold"}
    if task_id == "winogrande":
        return {"question": "sentence", "context": None, "choices": "choices", "gold": "gold"}
    return {"question": "question", "context": None, "choices": "choices", "gold": "gold"}


def task_entry(task_id, split, total, cap, n_choices, norm, style, instances, shots, instruction=None):
    question_prefix = "Goal: " if task_id == "piqa" else "Question: "
    mcf_lead_in = None
    if task_id == "hellaswag":
        mcf_lead_in = "Choose the best continuation:"
    elif task_id == "winogrande":
        mcf_lead_in = "Fill in the blank:"
    return {
        "task_id": task_id,
        "split": split,
        "total_instances": total,
        "eval_cap": cap,
        "num_choices": n_choices,
        "cf_normalization": norm,
        "style": style,
        "question_prefix": question_prefix,
        "answer_suffix": "Answer:",
        "mcf_lead_in": mcf_lead_in,
        "cf_strip_affixes": style in ("continuation", "blank_fill"),
        "instruction": instruction,
        "instances": instances,
        "shots": shots,
        "field_map": field_map_for("mmlu" if task_id.startswith("mmlu_") else task_id),
    }


def gen_tasks():
    entries = []
    for task_id, split, total, cap, n_choices, norm, style in TASKS:
        if task_id == "mmlu":
            subtasks = []
            for subject, size in MMLU_SUBJECTS:
                sub_id = "mmlu_%s" % subject
                instruction = "The following are multiple choice questions (with answers) about %s." % subject.replace(
                    "_", " "
                )
                sub = task_entry(
                    sub_id,
                    split,
                    size,
                    None,
                    4,
                    norm,
                    style,
                    "../instances/mmlu/%s.jsonl" % subject,
                    "../shots/mmlu/%s.jsonl" % subject,
                    instruction,
                )
                subtasks.append(sub)

                records = [dict(MMLU_AA_ROW0)] if subject == "abstract_algebra" else []
                start = len(records)
                for i in range(start, size):
                    records.append(qa_record(sub_id, i, 4))
                write_jsonl(os.path.join(DATA, "instances", "mmlu", "%s.jsonl" % subject), records)
                write_jsonl(
                    os.path.join(DATA, "shots", "mmlu", "%s.jsonl" % subject),
                    make_shots(sub_id, 4, lambda i, s=sub_id: qa_record(s, i, 4)),
                )
            entry = task_entry(task_id, split, total, cap, n_choices, norm, style, None, None)
            entry["subtasks"] = subtasks
            entries.append(entry)
            continue

        entry = task_entry(
            task_id, split, total, cap, n_choices, norm, style, "../instances/%s.jsonl" % task_id, "../shots/%s.jsonl" % task_id
        )
        entry["subtasks"] = []
        entries.append(entry)

        fixed = 4 if n_choices == "variable" else n_choices
        records = make_records(task_id, total, fixed)
        if task_id == "arc_challenge":
            records[0] = ARC_C_ROW0
            records[1] = ARC_C_ROW1
        elif task_id == "arc_easy":
            records[0] = ARC_E_ROW0
        elif task_id == "boolq":
            records[0] = BOOLQ_ROW0
        elif task_id == "csqa":
            records[0] = CSQA_ROW0
        elif task_id == "hellaswag":
            records[0] = HSWAG_ROW0
        elif task_id == "obqa":
            records[0] = OBQA_ROW0
        elif task_id == "piqa":
            records[0] = PIQA_ROW0
        elif task_id == "siqa":
            records[0] = SIQA_ROW0
        elif task_id == "winogrande":
            records[0] = WINOG_ROW0
        write_jsonl(os.path.join(DATA, "instances", "%s.jsonl" % task_id), records)

        if task_id == "arc_challenge":
            shots = ARC_C_SHOTS
        elif task_id == "arc_easy":
            shots = make_shots(task_id, fixed, lambda i: arc_record(task_id, i + 900000))
        elif task_id == "boolq":
            shots = make_shots(task_id, 2, lambda i: boolq_record(i + 900000))
        elif task_id == "hellaswag":
            shots = make_shots(task_id, 4, lambda i: hellaswag_record(i + 900000))
        elif task_id == "piqa":
            shots = make_shots(task_id, 2, lambda i: piqa_record(i + 900000))
        elif task_id == "winogrande":
            shots = make_shots(task_id, 2, lambda i: winogrande_record(i + 900000))
        else:
            shots = make_shots(task_id, fixed, lambda i: qa_record(task_id, i + 900000, fixed))
        write_jsonl(os.path.join(DATA, "shots", "%s.jsonl" % task_id), shots)

    config = {"version": 1, "tasks": entries}
    os.makedirs(os.path.join(DATA, "config"), exist_ok=True)
    with open(os.path.join(DATA, "config", "tasks.json"), "w") as f:
        json.dump(config, f, indent=1, ensure_ascii=False)
        f.write("\n")


# ---------------------------------------------------------------------------
# Golden prompt fixtures, transcribed verbatim from the documented examples.
# These literals are independent of the renderer; tests compare bytes.


def write_golden(name, text):
    path = os.path.join(DATA, "golden", "prompts", name)
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", newline="") as f:
        f.write(text)


def gen_goldens():
    g = write_golden

    arc_c_5shot = (
        "Question: George wants to warm his hands quickly by rubbing them. Which skin surface will produce the most heat?\n"
        "Answer: dry palms\n"
        "\n"
        "Question: Which of the following statements best explains why magnets usually stick to a refrigerator door?\n"
        "Answer: The refrigerator door contains iron.\n"
        "\n"
        "Question: A fold observed in layers of sedimentary rock most likely resulted from the\n"
        "Answer: converging of crustal plates.\n"
        "\n"
        "Question: Which of these do scientists offer as the most recent explanation as to why many plants and animals died out at the end of the Mesozoic era?\n"
        "Answer: impact of an asteroid created dust that blocked the sunlight\n"
        "\n"
        "Question: Which of the following is a trait that a dog does NOT inherit from its parents?\n"
        "Answer: the size of its appetite\n"
        "\n"
        "Question: A boat is acted on by a river current flowing north and by wind blowing on its sails. The boat travels northeast. In which direction is the wind most likely applying force to the sails of the boat?\n"
        "Answer:"
    )
    g("arc_challenge.cf5.prompt.txt", arc_c_5shot)
    g("arc_challenge.cf5.completion.txt", " east")

    g(
        "arc_challenge.mcf.prompt.txt",
        "Question: George wants to warm his hands quickly by rubbing them. Which skin surface will produce the most heat?\n"
        " A. dry palms\n"
        " B. wet palms\n"
        " C. palms covered with oil\n"
        " D. palms covered with lotion\n"
        "Answer:",
    )
    g("arc_challenge.mcf.completion.txt", " A")
    g(
        "arc_challenge.cf.prompt.txt",
        "Question: George wants to warm his hands quickly by rubbing them. Which skin surface will produce the most heat?\n"
        "Answer:",
    )
    g("arc_challenge.cf.completion.txt", " dry palms")

    g(
        "arc_easy.mcf.prompt.txt",
        "Question: Lichens are symbiotic organisms made of green algae and fungi. What do the green algae supply to the fungi in this symbiotic relationship?\n"
        " A. carbon dioxide\n"
        " B. food\n"
        " C. protection\n"
        " D. water\n"
        "Answer:",
    )
    g("arc_easy.mcf.completion.txt", " B")
    g(
        "arc_easy.cf.prompt.txt",
        "Question: Lichens are symbiotic organisms made of green algae and fungi. What do the green algae supply to the fungi in this symbiotic relationship?\n"
        "Answer:",
    )
    g("arc_easy.cf.completion.txt", " food")

    boolq_passage = (
        "Persian language -- Persian, also known by its endonym Farsi, is one of the Western Iranian languages "
        "within the Indo-Iranian branch of the Indo-European language family. It is primarily spoken in Iran, "
        "Afghanistan (officially known as Dari since 1958), and Tajikistan (officially known as Tajiki since the "
        "Soviet era), and some other regions which historically were Persianate societies and considered part of "
        "Greater Iran. It is written in the Persian alphabet, a modified variant of the Arabic script, which "
        "itself evolved from the Aramaic alphabet."
    )
    g(
        "boolq.mcf.prompt.txt",
        boolq_passage + "\n"
        "Question: do iran and afghanistan speak the same language?\n"
        " A. yes\n"
        " B. no\n"
        "Answer:",
    )
    g("boolq.mcf.completion.txt", " A")
    g(
        "boolq.cf.prompt.txt",
        boolq_passage + "\nQuestion: do iran and afghanistan speak the same language?\nAnswer:",
    )
    g("boolq.cf.completion.txt", " yes")

    g(
        "csqa.mcf.prompt.txt",
        "Question: Sammy wanted to go to where the people were.  Where might he go?\n"
        " A. race track\n"
        " B. populated areas\n"
        " C. the desert\n"
        " D. apartment\n"
        " E. roadblock\n"
        "Answer:",
    )
    g("csqa.mcf.completion.txt", " B")
    g(
        "csqa.cf.prompt.txt",
        "Question: Sammy wanted to go to where the people were.  Where might he go?\nAnswer:",
    )
    g("csqa.cf.completion.txt", " populated areas")

    hswag_ctx = (
        "Health: How to cope with suicidal thoughts. Put off any plans. Promise yourself that you'll wait 48 "
        "hours before doing anything. Remember, thoughts don't have the power to force you to act."
    )
    g(
        "hellaswag.mcf.prompt.txt",
        hswag_ctx + "\n"
        "Choose the best continuation:\n"
        " A. Even when you do, there may be a small image of the future still lurking around your brain. For instance, don't tell yourself that you can't make it.\n"
        " B. You're doing something, and no one can force you to act. It's completely natural to feel negative thoughts before you act.\n"
        " C. Do not panic if people talk to you (even if it's about quitting smoking). Have a plan for how you're going to react to a group of people who bring on suicidal thoughts.\n"
        " D. Sometimes extreme pain can distort our perception. Waiting before taking action will give your mind time to clear.\n"
        "Answer:",
    )
    g("hellaswag.mcf.completion.txt", " D")
    g("hellaswag.cf.prompt.txt", hswag_ctx)
    g(
        "hellaswag.cf.completion.txt",
        " Sometimes extreme pain can distort our perception. Waiting before taking action will give your mind time to clear.",
    )

    mmlu_instr = "The following are multiple choice questions (with answers) about abstract algebra."
    g(
        "mmlu_abstract_algebra.mcf.prompt.txt",
        mmlu_instr + "\n\n"
        "Question: Find all c in Z_3 such that Z_3[x]/(x^2 + c) is a field.\n"
        " A. 0\n"
        " B. 1\n"
        " C. 2\n"
        " D. 3\n"
        "Answer:",
    )
    g("mmlu_abstract_algebra.mcf.completion.txt", " B")
    g(
        "mmlu_abstract_algebra.cf.prompt.txt",
        mmlu_instr + "\n\nQuestion: Find all c in Z_3 such that Z_3[x]/(x^2 + c) is a field.\nAnswer:",
    )
    g("mmlu_abstract_algebra.cf.completion.txt", " 1")

    g(
        "obqa.mcf.prompt.txt",
        "Question: When standing miles away from Mount Rushmore\n"
        " A. the mountains seem very close\n"
        " B. the mountains are boring\n"
        " C. the mountains look the same as from up close\n"
        " D. the mountains seem smaller than in photographs\n"
        "Answer:",
    )
    g("obqa.mcf.completion.txt", " D")
    g("obqa.cf.prompt.txt", "Question: When standing miles away from Mount Rushmore\nAnswer:")
    g("obqa.cf.completion.txt", " the mountains seem smaller than in photographs")

    g(
        "piqa.mcf.prompt.txt",
        "Goal: how do you stab something?\n"
        " A. stick a sharp object through it.\n"
        " B. pin it with a sharp object.\n"
        "Answer:",
    )
    g("piqa.mcf.completion.txt", " A")
    g("piqa.cf.prompt.txt", "Goal: how do you stab something?\nAnswer:")
    g("piqa.cf.completion.txt", " stick a sharp object through it.")

    g(
        "siqa.mcf.prompt.txt",
        "Question: Cameron decided to have a barbecue and gathered her friends together. How would Others feel as a result?\n"
        " A. like attending\n"
        " B. like staying home\n"
        " C. a good friend to have\n"
        "Answer:",
    )
    g("siqa.mcf.completion.txt", " A")
    g(
        "siqa.cf.prompt.txt",
        "Question: Cameron decided to have a barbecue and gathered her friends together. How would Others feel as a result?\nAnswer:",
    )
    g("siqa.cf.completion.txt", " like attending")

    g(
        "winogrande.mcf.prompt.txt",
        "Fill in the blank: John moved the couch from the garage to the backyard to create space. The ___ is small.\n"
        " A. garage\n"
        " B. backyard\n"
        "Answer:",
    )
    g("winogrande.mcf.completion.txt", " A")
    g(
        "winogrande.cf.prompt1.txt",
        "John moved the couch from the garage to the backyard to create space. The garage",
    )
    g(
        "winogrande.cf.prompt2.txt",
        "John moved the couch from the garage to the backyard to create space. The backyard",
    )
    g("winogrande.cf.completion.txt", " is small.")


# ---------------------------------------------------------------------------
# Published per-scheme accuracy matrices across 15 public models, used as
# inputs to the analysis operations (win percentage, oracle gap).
# Scheme column order: none, char, token, pmi.

NORM_MODELS = [
    "Pythia-1B", "OLMo-1B", "TinyLlama-1.1B", "Pythia-6.7B", "RPJ-INCITE-7B",
    "MPT-7b", "Falcon-7B", "OLMo-7B", "StableLM2-1.6B", "Llama2-7B",
    "OLMo-7B-0424", "Llama2-13B", "Llama3-8B", "Mistral-7B-v0.1", "Llama3-70B",
]

NORM_SCORES = {
    "arc_challenge": [
        [26.1, 28.4, 29.0, 31.4], [32.9, 34.4, 34.7, 38.6], [31.5, 34.1, 32.2, 38.1],
        [36.3, 39.5, 39.0, 44.6], [40.3, 43.5, 42.9, 45.3], [41.7, 46.3, 44.7, 45.7],
        [41.6, 47.4, 47.6, 49.7], [41.6, 45.5, 45.0, 46.4], [42.2, 44.3, 44.9, 47.3],
        [48.4, 52.0, 50.2, 54.2], [45.5, 49.3, 48.5, 51.2], [52.4, 57.1, 54.2, 56.2],
        [53.6, 58.4, 56.8, 57.1], [56.1, 60.2, 58.9, 59.6], [65.7, 69.0, 67.7, 69.0],
    ],
    "arc_easy": [
        [61.9, 63.4, 60.9, 56.5], [68.5, 68.3, 65.8, 60.2], [68.6, 69.5, 64.4, 60.4],
        [71.4, 72.6, 70.0, 64.1], [76.1, 78.8, 75.9, 70.1], [76.3, 78.0, 76.2, 68.5],
        [77.0, 80.6, 78.3, 69.8], [76.7, 78.9, 77.4, 69.6], [73.3, 75.3, 74.4, 70.0],
        [81.4, 84.0, 81.0, 74.7], [79.2, 81.5, 79.7, 71.1], [83.9, 85.9, 82.8, 77.6],
        [85.8, 86.6, 85.8, 76.6], [84.7, 86.8, 84.6, 78.6], [89.7, 89.6, 90.4, 82.6],
    ],
    "boolq": [
        [56.6, 61.1, 56.6, 41.0], [51.3, 56.0, 51.3, 42.3], [63.6, 65.8, 63.6, 53.6],
        [68.7, 66.9, 68.7, 47.6], [72.0, 74.5, 72.0, 72.4], [82.4, 79.9, 82.4, 76.7],
        [78.2, 78.8, 78.2, 77.6], [78.7, 77.7, 78.7, 78.6], [82.3, 82.0, 82.3, 76.1],
        [86.1, 85.6, 86.1, 80.5], [85.9, 83.8, 85.9, 85.6], [86.7, 88.2, 86.7, 77.5],
        [87.5, 87.8, 87.5, 67.0], [89.3, 89.1, 89.3, 89.2], [91.2, 90.4, 91.2, 91.7],
    ],
    "csqa": [
        [47.7, 50.9, 47.3, 50.9], [56.8, 60.0, 57.6, 62.2], [58.9, 60.5, 55.9, 61.1],
        [59.5, 62.2, 58.9, 62.1], [67.7, 69.4, 67.2, 69.2], [69.6, 70.3, 69.1, 70.9],
        [70.0, 70.3, 69.5, 73.4], [69.0, 70.0, 67.9, 70.8], [63.6, 66.3, 65.6, 68.2],
        [70.5, 72.7, 68.4, 74.2], [71.6, 63.5, 59.0, 70.4], [72.2, 72.7, 68.4, 74.0],
        [72.0, 74.2, 73.5, 69.9], [73.1, 73.8, 74.4, 72.3], [77.1, 77.1, 77.1, 75.8],
    ],
    "hellaswag": [
        [39.2, 48.0, 47.8, 41.0], [50.9, 65.2, 64.1, 49.8], [46.9, 60.8, 59.7, 48.5],
        [50.4, 66.1, 65.9, 53.5], [55.7, 72.8, 71.8, 60.6], [60.5, 79.6, 76.5, 61.5],
        [60.7, 79.0, 78.4, 60.0], [59.3, 78.1, 76.3, 64.2], [54.7, 70.3, 69.7, 56.4],
        [61.9, 78.9, 77.1, 64.4], [61.4, 80.1, 77.7, 65.2], [63.7, 83.9, 81.0, 70.3],
        [62.8, 81.8, 80.3, 71.1], [64.5, 83.0, 81.0, 70.3], [70.3, 89.5, 87.1, 80.8],
    ],
    "mmlu": [
        [29.5, 31.1, 30.8, 32.3], [31.7, 33.4, 33.3, 34.2], [31.2, 33.6, 33.0, 34.5],
        [34.9, 37.7, 37.0, 37.9], [37.4, 40.1, 40.0, 40.9], [37.8, 40.6, 40.1, 40.4],
        [39.3, 42.1, 41.9, 42.1], [37.9, 40.5, 40.5, 40.6], [35.2, 37.1, 37.1, 38.6],
        [42.0, 44.4, 43.9, 44.8], [39.9, 42.4, 42.2, 41.8], [44.3, 47.6, 46.7, 47.1],
        [47.5, 51.1, 50.8, 49.6], [46.9, 50.3, 50.0, 49.0], [57.2, 60.7, 60.5, 59.4],
    ],
    "obqa": [
        [20.2, 28.6, 30.4, 40.4], [26.0, 33.0, 38.4, 47.6], [24.4, 34.8, 35.8, 45.0],
        [25.8, 37.0, 37.4, 50.4], [31.8, 40.0, 42.8, 49.0], [31.6, 43.8, 43.8, 52.4],
        [35.2, 45.8, 44.4, 55.2], [33.2, 42.8, 45.0, 55.8], [34.4, 41.6, 45.2, 51.0],
        [33.8, 44.6, 45.0, 57.8], [37.2, 48.4, 49.6, 59.8], [39.2, 46.4, 48.4, 60.8],
        [37.0, 47.6, 50.0, 56.2], [38.2, 48.4, 50.0, 61.0], [47.0, 55.0, 56.6, 69.0],
    ],
    "piqa": [
        [70.3, 68.9, 68.8, 60.1], [73.2, 74.1, 73.2, 59.9], [72.1, 71.7, 72.3, 62.0],
        [74.8, 74.9, 74.3, 63.6], [74.9, 75.9, 76.0, 61.9], [77.7, 79.2, 78.1, 63.7],
        [78.3, 79.0, 79.2, 63.2], [78.2, 78.5, 79.3, 65.2], [75.2, 75.6, 75.9, 63.6],
        [76.7, 77.5, 77.7, 62.9], [78.5, 80.3, 79.3, 66.3], [78.9, 80.2, 79.8, 66.4],
        [79.7, 81.6, 81.1, 67.5], [80.8, 82.8, 81.3, 67.4], [82.8, 83.1, 83.2, 68.3],
    ],
    "siqa": [
        [42.8, 46.4, 46.0, 44.4], [45.3, 51.5, 49.9, 47.3], [45.6, 50.4, 48.2, 48.4],
        [48.0, 51.7, 52.8, 49.2], [50.8, 56.6, 56.0, 52.2], [51.0, 57.4, 55.9, 52.5],
        [52.9, 60.1, 57.5, 54.4], [50.3, 56.5, 56.5, 52.8], [52.7, 61.1, 60.7, 56.1],
        [52.6, 59.6, 58.3, 53.6], [53.5, 54.9, 54.3, 55.7], [56.7, 63.6, 60.7, 56.8],
        [54.6, 62.6, 60.1, 56.4], [55.6, 63.0, 60.9, 57.5], [59.7, 65.6, 64.8, 57.3],
    ],
}

# Published (recommended-scheme accuracy, oracle gap) pairs per model/task.
RECOMMENDED_DIFF = {
    "arc_challenge": {
        "recommended": "pmi",
        "rows": [
            [31.4, 0.0], [38.6, 0.0], [38.1, 0.0], [44.6, 0.0], [45.3, 0.0],
            [45.7, 0.6], [49.7, 0.0], [46.4, 0.0], [47.3, 0.0], [54.2, 0.0],
            [51.2, 0.0], [56.2, 0.9], [57.1, 1.3], [59.6, 0.6], [69.0, 0.0],
        ],
    },
    "arc_easy": {
        "recommended": "char",
        "rows": [
            [63.4, 0.0], [68.3, 0.2], [69.5, 0.0], [72.6, 0.0], [78.8, 0.0],
            [78.0, 0.0], [80.6, 0.0], [78.9, 0.0], [75.3, 0.0], [84.0, 0.0],
            [81.5, 0.0], [85.9, 0.0], [86.6, 0.0], [86.8, 0.0], [89.6, 0.8],
        ],
    },
    "boolq": {
        "recommended": "none",
        "rows": [
            [56.6, 4.5], [51.3, 4.7], [63.6, 2.2], [68.7, 0.0], [72.0, 2.5],
            [82.4, 0.0], [78.2, 0.6], [78.7, 0.0], [82.3, 0.0], [86.1, 0.0],
            [85.9, 0.0], [86.7, 1.5], [87.5, 0.3], [89.3, 0.0], [91.2, 0.5],
        ],
    },
    "csqa": {
        "recommended": "pmi",
        "rows": [
            [50.9, 0.0], [62.2, 0.0], [61.1, 0.0], [62.1, 0.2], [69.2, 0.2],
            [70.9, 0.0], [73.4, 0.0], [70.8, 0.0], [68.2, 0.0], [74.2, 0.0],
            [70.4, 1.1], [74.0, 0.0], [69.9, 4.3], [72.3, 2.1], [75.8, 1.3],
        ],
    },
    "hellaswag": {
        "recommended": "char",
        "rows": [
            [48.0, 0.0], [65.2, 0.0], [60.8, 0.0], [66.1, 0.0], [72.8, 0.0],
            [79.6, 0.0], [79.0, 0.0], [78.1, 0.0], [70.3, 0.0], [78.9, 0.0],
            [80.1, 0.0], [83.9, 0.0], [81.8, 0.0], [83.0, 0.0], [89.5, 0.0],
        ],
    },
    "mmlu": {
        "recommended": "char",
        "rows": [
            [31.1, 1.2], [33.4, 0.8], [33.6, 0.9], [37.7, 0.2], [40.1, 0.8],
            [40.6, 0.0], [42.1, 0.0], [40.5, 0.1], [37.1, 1.5], [44.4, 0.4],
            [42.4, 0.0], [47.6, 0.0], [51.1, 0.0], [50.3, 0.0], [60.7, 0.0],
        ],
    },
    "obqa": {
        "recommended": "pmi",
        "rows": [
            [40.4, 0.0], [47.6, 0.0], [45.0, 0.0], [50.4, 0.0], [49.0, 0.0],
            [52.4, 0.0], [55.2, 0.0], [55.8, 0.0], [51.0, 0.0], [57.8, 0.0],
            [59.8, 0.0], [60.8, 0.0], [56.2, 0.0], [61.0, 0.0], [69.0, 0.0],
        ],
    },
    "piqa": {
        "recommended": "char",
        "rows": [
            [68.9, 1.4], [74.1, 0.0], [71.7, 0.6], [74.9, 0.0], [75.9, 0.1],
            [79.2, 0.0], [79.0, 0.2], [78.5, 0.8], [75.6, 0.3], [77.5, 0.2],
            [80.3, 0.0], [80.2, 0.0], [81.6, 0.0], [82.8, 0.0], [83.1, 0.1],
        ],
    },
    "siqa": {
        "recommended": "char",
        "rows": [
            [46.4, 0.0], [51.5, 0.0], [50.4, 0.0], [51.7, 1.1], [56.6, 0.0],
            [57.4, 0.0], [60.1, 0.0], [56.5, 0.0], [61.1, 0.0], [59.6, 0.0],
            [54.9, 0.8], [63.6, 0.0], [62.6, 0.0], [63.0, 0.0], [65.6, 0.0],
        ],
    },
}


def gen_analysis():
    os.makedirs(os.path.join(DATA, "analysis"), exist_ok=True)
    with open(os.path.join(DATA, "analysis", "norm_scores.json"), "w") as f:
        json.dump(
            {"models": NORM_MODELS, "schemes": ["none", "char", "token", "pmi"], "tasks": NORM_SCORES},
            f,
            indent=1,
        )
        f.write("\n")
    with open(os.path.join(DATA, "analysis", "recommended_diff.json"), "w") as f:
        json.dump({"models": NORM_MODELS, "tasks": RECOMMENDED_DIFF}, f, indent=1)
        f.write("\n")


def main():
    gen_tasks()
    gen_goldens()
    gen_analysis()
    for task, rows in NORM_SCORES.items():
        assert len(rows) == 15, task
        assert all(len(r) == 4 for r in rows), task
    for task, spec in RECOMMENDED_DIFF.items():
        assert len(spec["rows"]) == 15, task
    print("wrote task data under", DATA)


if __name__ == "__main__":
    main()
