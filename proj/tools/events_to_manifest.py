#!/usr/bin/env python3
# Copyright 2026 The cogload Authors. All Rights Reserved.
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#     http://www.apache.org/licenses/LICENSE-2.0
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Converter stub: BIDS-style events.tsv to a cogload manifest.

Expected event semantics
  * one row per retention window; `onset` (seconds) is the first sample of the
    3 s hold period after the last digit was presented, not the trial start
  * `trial_type` names the load: "just_listen" or "memory_5", "memory_9",
    "memory_13" (case and separators are ignored)
  * rows of any other type (stimulus, response, fixation) are skipped
  * trial_index counts retention windows per (subject, class) in file order

The signal files must already be converted to CSV or BSIG. Pass each one as
--recording id:modality:path:fs:ch1,ch2,...; every event gets an onset in
every recording, computed as round(onset * fs).
"""

import argparse
import csv
import json
import re
import sys

LOAD = {"5": "Five", "9": "Nine", "13": "Thirteen"}


def parse_type(raw):
    t = re.sub(r"[^a-z0-9]", "", raw.lower())
    if t in ("justlisten", "listen", "baseline"):
        return "JustListen", "None"
    m = re.fullmatch(r"(?:memory|mem|load)(5|9|13)", t)
    if m:
        return "Memory", LOAD[m.group(1)]
    return None


def parse_recording(spec):
    rid, modality, path, fs, channels = spec.split(":", 4)
    return {
        "id": rid,
        "modality": modality.upper(),
        "signal_path": path,
        "format": "csv" if path.endswith(".csv") else "bsig",
        "fs": float(fs),
        "channel_names": channels.split(","),
    }


def main(argv):
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--events", required=True, help="events.tsv")
    ap.add_argument("--subject", required=True)
    ap.add_argument("--recording", action="append", required=True)
    ap.add_argument("--out", required=True, help="manifest.json to write")
    args = ap.parse_args(argv)

    recordings = [parse_recording(r) for r in args.recording]
    counters = {}
    events = []
    with open(args.events, newline="") as f:
        for row in csv.DictReader(f, delimiter="\t"):
            label = parse_type(row.get("trial_type", ""))
            if label is None:
                continue
            trial = counters.get(label, 0)
            counters[label] = trial + 1
            onset = float(row["onset"])
            events.append({
                "subject": args.subject,
                "condition": label[0],
                "subcondition": label[1],
                "trial_index": trial,
                "onsets": [{"recording": r["id"], "onset_sample": int(round(onset * r["fs"]))}
                           for r in recordings],
            })

    manifest = {
        "version": 1,
        "epoch_seconds": 3.0,
        "subjects": [{"id": args.subject, "recordings": recordings}],
        "events": events,
    }
    with open(args.out, "w") as f:
        json.dump(manifest, f, indent=2)
    print(f"{len(events)} events written to {args.out}")


if __name__ == "__main__":
    main(sys.argv[1:])
