#!/usr/bin/env python3
"""Regenerates the JSON fixtures in this directory.

The taxonomy is a hand-modeled slice of the CWE hierarchy: 124 view-1003
entries (2 pillars, 36 classes, 86 lower-level entries) plus a few
intermediate nodes outside view 1003. Names are abbreviated.

Run from any directory; outputs land next to this script.
"""

import json
from pathlib import Path

HERE = Path(__file__).resolve().parent

# id, name, abstraction, in_view_1003
PILLARS_1003 = [
    (682, "Incorrect Calculation"),
    (697, "Incorrect Comparison"),
]

PILLARS_OTHER = [
    (664, "Improper Control of a Resource Through its Lifetime"),
    (707, "Improper Neutralization"),
    (693, "Protection Mechanism Failure"),
    (703, "Improper Check or Handling of Exceptional Conditions"),
    (435, "Improper Interaction Between Multiple Correctly-Behaving Entities"),
    (710, "Improper Adherence to Coding Standards"),
    (284, "Improper Access Control"),
]

# class id, name, parent pillar
CLASSES = [
    (913, "Improper Control of Dynamically-Managed Code Resources", 664),
    (119, "Improper Restriction of Operations within Bounds of a Memory Buffer", 664),
    (669, "Incorrect Resource Transfer Between Spheres", 664),
    (672, "Operation on a Resource after Expiration or Release", 664),
    (330, "Use of Insufficiently Random Values", 693),
    (704, "Incorrect Type Conversion or Cast", 664),
    (287, "Improper Authentication", 284),
    (345, "Insufficient Verification of Data Authenticity", 693),
    (269, "Improper Privilege Management", 284),
    (610, "Externally Controlled Reference to a Resource in Another Sphere", 664),
    (706, "Use of Incorrectly-Resolved Name or Reference", 664),
    (20, "Improper Input Validation", 707),
    (116, "Improper Encoding or Escaping of Output", 707),
    (400, "Uncontrolled Resource Consumption", 664),
    (74, "Improper Neutralization of Special Elements in Output ('Injection')", 707),
    (754, "Improper Check for Unusual or Exceptional Conditions", 703),
    (326, "Inadequate Encryption Strength", 693),
    (668, "Exposure of Resource to Wrong Sphere", 664),
    (436, "Interpretation Conflict", 435),
    (200, "Information Exposure", 664),
    (285, "Improper Authorization", 284),
    (311, "Missing Encryption of Sensitive Data", 693),
    (327, "Use of a Broken or Risky Cryptographic Algorithm", 693),
    (362, "Concurrent Execution using Shared Resource with Improper Synchronization", 664),
    (404, "Improper Resource Shutdown or Release", 664),
    (407, "Algorithmic Complexity", 664),
    (662, "Improper Synchronization", 664),
    (665, "Improper Initialization", 664),
    (667, "Improper Locking", 664),
    (670, "Always-Incorrect Control Flow Implementation", 691),
    (674, "Uncontrolled Recursion", 691),
    (732, "Incorrect Permission Assignment for Critical Resource", 284),
    (755, "Improper Handling of Exceptional Conditions", 703),
    (834, "Excessive Iteration", 691),
    (862, "Missing Authorization", 284),
    (863, "Incorrect Authorization", 284),
]

# Intermediate nodes outside view 1003: id, name, abstraction, parent
INTERMEDIATE = [
    (691, "Insufficient Control Flow Management", "Pillar", None),
    (825, "Expired Pointer Dereference", "Base", 672),
    (943, "Improper Neutralization of Special Elements in Data Query Logic", "Class", 74),
    (118, "Incorrect Access of Indexable Resource", "Class", 664),
    (77, "Improper Neutralization of Special Elements used in a Command", "Class", 74),
]

# lower-level id, name, abstraction, parent class (view 1000)
LOWER = [
    (89, "SQL Injection", "Base", 943),
    (502, "Deserialization of Untrusted Data", "Base", 913),
    (787, "Out-of-bounds Write", "Base", 119),
    (78, "OS Command Injection", "Base", 77),
    (120, "Classic Buffer Overflow", "Base", 119),
    (94, "Code Injection", "Base", 913),
    (798, "Use of Hard-coded Credentials", "Base", 287),
    (434, "Unrestricted Upload of File with Dangerous Type", "Base", 669),
    (416, "Use After Free", "Variant", 825),
    (352, "Cross-Site Request Forgery (CSRF)", "Compound", 345),
    (346, "Origin Validation Error", "Base", 345),
    (613, "Insufficient Session Expiration", "Base", 672),
    (190, "Integer Overflow or Wraparound", "Base", 682),
    (415, "Double Free", "Variant", 825),
    (125, "Out-of-bounds Read", "Base", 119),
    (129, "Improper Validation of Array Index", "Base", 20),
    (611, "Improper Restriction of XML External Entity Reference", "Base", 610),
    (918, "Server-Side Request Forgery (SSRF)", "Base", 610),
    (22, "Path Traversal", "Base", 706),
    (191, "Integer Underflow (Wrap or Wraparound)", "Base", 682),
    (79, "Cross-site Scripting", "Base", 74),
    (88, "Argument Injection or Modification", "Base", 77),
    (91, "XML Injection", "Base", 74),
    (1289, "Improper Validation of Unsafe Equivalence in Input", "Base", 20),
    (15, "External Control of System or Configuration Setting", "Base", 610),
    (23, "Relative Path Traversal", "Base", 706),
    (36, "Absolute Path Traversal", "Base", 706),
    (59, "Improper Link Resolution Before File Access", "Base", 706),
    (73, "External Control of File Name or Path", "Base", 610),
    (90, "LDAP Injection", "Base", 943),
    (113, "HTTP Response Splitting", "Base", 74),
    (117, "Improper Output Neutralization for Logs", "Base", 116),
    (131, "Incorrect Calculation of Buffer Size", "Base", 682),
    (134, "Use of Externally-Controlled Format String", "Base", 668),
    (170, "Improper Null Termination", "Base", 707),
    (193, "Off-by-one Error", "Base", 682),
    (209, "Information Exposure Through an Error Message", "Base", 200),
    (212, "Improper Removal of Sensitive Information Before Storage or Transfer", "Base", 669),
    (252, "Unchecked Return Value", "Base", 754),
    (259, "Use of Hard-coded Password", "Variant", 798),
    (276, "Incorrect Default Permissions", "Base", 732),
    (290, "Authentication Bypass by Spoofing", "Base", 287),
    (294, "Authentication Bypass by Capture-replay", "Base", 287),
    (295, "Improper Certificate Validation", "Base", 287),
    (306, "Missing Authentication for Critical Function", "Base", 287),
    (307, "Improper Restriction of Excessive Authentication Attempts", "Base", 287),
    (319, "Cleartext Transmission of Sensitive Information", "Base", 311),
    (321, "Use of Hard-coded Cryptographic Key", "Base", 798),
    (323, "Reusing a Nonce, Key Pair in Encryption", "Base", 330),
    (324, "Use of a Key Past its Expiration Date", "Base", 672),
    (325, "Missing Required Cryptographic Step", "Base", 327),
    (331, "Insufficient Entropy", "Base", 330),
    (335, "Incorrect Usage of Seeds in PRNG", "Base", 330),
    (338, "Use of Cryptographically Weak PRNG", "Base", 330),
    (347, "Improper Verification of Cryptographic Signature", "Base", 345),
    (367, "Time-of-check Time-of-use (TOCTOU) Race Condition", "Base", 362),
    (369, "Divide By Zero", "Base", 682),
    (384, "Session Fixation", "Compound", 610),
    (425, "Direct Request ('Forced Browsing')", "Base", 862),
    (426, "Untrusted Search Path", "Base", 668),
    (427, "Uncontrolled Search Path Element", "Base", 668),
    (428, "Unquoted Search Path or Element", "Base", 668),
    (444, "HTTP Request Smuggling", "Base", 436),
    (457, "Use of Uninitialized Variable", "Variant", 665),
    (470, "Unsafe Reflection", "Base", 913),
    (476, "NULL Pointer Dereference", "Base", 754),
    (521, "Weak Password Requirements", "Base", 287),
    (522, "Insufficiently Protected Credentials", "Base", 287),
    (532, "Information Exposure Through Log Files", "Base", 200),
    (565, "Reliance on Cookies without Validation and Integrity Checking", "Base", 669),
    (601, "Open Redirect", "Base", 610),
    (617, "Reachable Assertion", "Base", 670),
    (639, "Authorization Bypass Through User-Controlled Key", "Base", 863),
    (640, "Weak Password Recovery Mechanism for Forgotten Password", "Base", 287),
    (643, "XPath Injection", "Base", 943),
    (763, "Release of Invalid Pointer or Reference", "Base", 404),
    (770, "Allocation of Resources Without Limits or Throttling", "Base", 400),
    (772, "Missing Release of Resource after Effective Lifetime", "Base", 404),
    (776, "XML Entity Expansion", "Base", 674),
    (824, "Access of Uninitialized Pointer", "Base", 119),
    (829, "Inclusion of Functionality from Untrusted Control Sphere", "Base", 669),
    (835, "Infinite Loop", "Base", 834),
    (843, "Type Confusion", "Base", 704),
    (908, "Use of Uninitialized Resource", "Base", 665),
    (909, "Missing Initialization of Resource", "Base", 665),
    (1021, "Improper Restriction of Rendered UI Layers or Frames", "Base", 610),
]

# Extra edges only in view 1008 (and one duplicated across both views).
VIEW_1008_EDGES = [
    (352, 345),
    (79, 74),
    (89, 74),
    (787, 119),
    (416, 672),
    (190, 682),
    (22, 706),
    (502, 913),
]


def build_taxonomy():
    nodes, edges = [], []
    for cid, name in PILLARS_1003:
        nodes.append({"id": cid, "name": name, "abstraction": "Pillar", "in_view_1003": True})
    for cid, name in PILLARS_OTHER:
        nodes.append({"id": cid, "name": name, "abstraction": "Pillar", "in_view_1003": False})
    for cid, name, abstraction, parent in INTERMEDIATE:
        nodes.append({"id": cid, "name": name, "abstraction": abstraction, "in_view_1003": False})
        if parent is not None:
            edges.append({"child": cid, "parent": parent, "view": 1000})
    for cid, name, parent in CLASSES:
        nodes.append({"id": cid, "name": name, "abstraction": "Class", "in_view_1003": True})
        edges.append({"child": cid, "parent": parent, "view": 1000})
    for cid, name, abstraction, parent in LOWER:
        nodes.append({"id": cid, "name": name, "abstraction": abstraction, "in_view_1003": True})
        edges.append({"child": cid, "parent": parent, "view": 1000})
    for child, parent in VIEW_1008_EDGES:
        edges.append({"child": child, "parent": parent, "view": 1008})

    ids = [n["id"] for n in nodes]
    assert len(ids) == len(set(ids)), "duplicate node id"
    in_1003 = [n for n in nodes if n["in_view_1003"]]
    high = [n for n in in_1003 if n["abstraction"] in ("Pillar", "Class")]
    assert len(in_1003) == 124, len(in_1003)
    assert len(high) == 38, len(high)
    known = set(ids)
    for e in edges:
        assert e["child"] in known and e["parent"] in known, e
    return {"nodes": nodes, "edges": edges}


# Published class-list rows: id, frequency, mean CVSS.
CLASS_LIST = [
    (913, 188, 8.81), (119, 2745, 8.00), (669, 181, 8.31), (672, 876, 7.96),
    (330, 111, 8.43), (704, 54, 8.68), (287, 627, 7.86), (345, 483, 7.73),
    (682, 215, 7.78), (269, 258, 7.70), (610, 725, 7.46), (706, 358, 7.23),
    (20, 3960, 6.99), (116, 2461, 6.82), (400, 272, 7.01), (74, 2455, 6.82),
    (754, 264, 7.01), (326, 35, 7.24), (668, 2292, 6.66), (436, 17, 7.19),
]

# Remaining high-level entries: small counts and low means so that none
# outranks a published row. CWE-362 carries the scope's minimum mean.
CLASS_LIST_FILLERS = [
    (362, 61, 5.842623), (697, 12, 6.10), (200, 30, 6.20), (285, 9, 6.40),
    (311, 14, 6.30), (327, 22, 6.05), (404, 8, 6.50), (407, 5, 6.60),
    (662, 11, 6.00), (665, 19, 6.15), (667, 4, 6.70), (670, 3, 6.90),
    (674, 6, 6.25), (732, 27, 6.10), (755, 10, 6.35), (834, 2, 7.50),
    (862, 25, 6.05), (863, 16, 6.20),
]


def scores_for(n, mean):
    """n one-decimal CVSS scores whose sum is the nearest tenth to n * mean."""
    total = round(n * mean * 10)
    base, extra = divmod(total, n)
    scores = [(base + (1 if i < extra else 0)) / 10 for i in range(n)]
    assert all(0.0 <= s <= 10.0 for s in scores)
    return scores


def build_class_list_dataset():
    lines = ['# {"cutoff_date":"2020-01-01","source_label":"class-list fixture","tool":"make_fixtures.py"}']
    serial = 1
    for cid, n, mean in CLASS_LIST + CLASS_LIST_FILLERS:
        for score in scores_for(n, mean):
            cve = f"CVE-2019-{serial:05d}"
            serial += 1
            lines.append(json.dumps({"cve_id": cve, "base_score": score, "cwe_ids": [cid]}))
    return "\n".join(lines) + "\n"


def nvd_item(cve_id, cwe_values, score):
    item = {
        "cve": {
            "data_type": "CVE",
            "CVE_data_meta": {"ID": cve_id, "ASSIGNER": "cve@mitre.org"},
            "problemtype": {
                "problemtype_data": [
                    {"description": [{"lang": "en", "value": v} for v in cwe_values]}
                ]
            },
        },
        "impact": {},
    }
    if score is not None:
        item["impact"]["baseMetricV3"] = {"cvssV3": {"version": "3.1", "baseScore": score}}
    return item


def feed(items):
    return {
        "CVE_data_type": "CVE",
        "CVE_data_format": "MITRE",
        "CVE_data_version": "4.0",
        "CVE_data_numberOfCVEs": str(len(items)),
        "CVE_Items": items,
    }


def build_feeds():
    three = feed([
        nvd_item("CVE-2019-0001", ["CWE-89"], 9.8),
        nvd_item("CVE-2019-0002", ["NVD-CWE-noinfo"], 5.3),
        nvd_item("CVE-2019-0003", ["CWE-79"], None),
    ])
    years = feed([
        nvd_item("CVE-2017-0100", ["CWE-20"], 7.5),
        nvd_item("CVE-2017-0101", ["CWE-79"], 6.1),
        nvd_item("CVE-2018-0200", ["CWE-119"], 8.8),
        nvd_item("CVE-2018-0201", ["CWE-787"], 9.8),
        nvd_item("CVE-2019-0300", ["CWE-89"], 9.8),
        nvd_item("CVE-2019-0301", ["CWE-119", "CWE-787"], 8.8),
        nvd_item("CVE-2019-0302", ["NVD-CWE-Other"], 4.3),
        nvd_item("CVE-2019-0303", ["CWE-20"], 5.3),
        nvd_item("CVE-2020-0400", ["CWE-416"], 7.8),
        nvd_item("CVE-2020-0401", ["CWE-22"], 6.5),
    ])
    return three, years


def main():
    (HERE / "taxonomy_2019.json").write_text(json.dumps(build_taxonomy(), indent=1) + "\n")
    (HERE / "class_list_dataset.jsonl").write_text(build_class_list_dataset())
    three, years = build_feeds()
    (HERE / "feed_three_items.json").write_text(json.dumps(three, indent=1) + "\n")
    (HERE / "feed_2017_2020.json").write_text(json.dumps(years, indent=1) + "\n")


if __name__ == "__main__":
    main()
