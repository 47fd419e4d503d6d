#!/usr/bin/env python3
# Copyright 2026 The hdc-decomp Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Fetch ISOLET and PAGE (page blocks) from the UCI repository and write
<name>_train.csv / <name>_test.csv: numeric features, integer label last,
labels shifted to start at 0.

ISOLET ships a fixed split (isolet1+2+3+4 train, isolet5 test). PAGE has no
split, so a per-class 90/10 split is drawn with --seed.

Without network access, download the archives elsewhere and pass
--from-dir; the script accepts the .zip archives, the .Z files inside them,
or already-decompressed .data files.
"""

import argparse
import csv
import io
import random
import shutil
import subprocess
import sys
import urllib.request
import zipfile
from collections import defaultdict
from pathlib import Path

SOURCES = {
    "isolet": {
        "url": "https://archive.ics.uci.edu/static/public/54/isolet.zip",
        "files": {"train": "isolet1+2+3+4.data", "test": "isolet5.data"},
        "features": 617,
        "classes": 26,
    },
    "page": {
        "url": "https://archive.ics.uci.edu/static/public/78/page+blocks+classification.zip",
        "files": {"all": "page-blocks.data"},
        "features": 10,
        "classes": 5,
    },
}


def decompress_z(blob):
    # gzip understands the old LZW .Z format; Python's stdlib does not.
    tool = shutil.which("gzip") or shutil.which("uncompress")
    if tool is None:
        sys.exit("need gzip or uncompress to read .Z files")
    return subprocess.run([tool, "-dc"], input=blob, check=True, capture_output=True).stdout


def read_member(name, archive=None, directory=None):
    """Text of `name` from a zip archive or a directory, trying .Z variants."""
    candidates = [name, name + ".Z"]
    if archive is not None:
        members = {Path(m).name: m for m in archive.namelist()}
        for c in candidates:
            if c in members:
                blob = archive.read(members[c])
                return (decompress_z(blob) if c.endswith(".Z") else blob).decode()
    if directory is not None:
        for c in candidates:
            path = directory / c
            if path.exists():
                blob = path.read_bytes()
                return (decompress_z(blob) if c.endswith(".Z") else blob).decode()
    raise FileNotFoundError(name)


def parse_rows(text, features, sep):
    rows = []
    for line_no, line in enumerate(text.splitlines(), 1):
        line = line.strip().rstrip(".")
        if not line:
            continue
        cells = [c for c in (line.split(",") if sep == "," else line.split()) if c.strip()]
        if len(cells) != features + 1:
            raise ValueError(f"line {line_no}: expected {features + 1} columns, got {len(cells)}")
        label = int(float(cells[-1])) - 1
        rows.append([float(c) for c in cells[:-1]] + [label])
    return rows


def write_rows(path, rows, features):
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow([f"f{i}" for i in range(features)] + ["label"])
        for r in rows:
            w.writerow([repr(v) for v in r[:-1]] + [r[-1]])
    print(f"wrote {len(rows)} rows to {path}")


def stratified_split(rows, test_fraction, seed):
    by_class = defaultdict(list)
    for r in rows:
        by_class[r[-1]].append(r)
    rng = random.Random(seed)
    train, test = [], []
    for label in sorted(by_class):
        group = by_class[label]
        rng.shuffle(group)
        n_test = max(1, round(test_fraction * len(group))) if len(group) > 1 else 0
        test.extend(group[:n_test])
        train.extend(group[n_test:])
    return train, test


def open_source(name, from_dir):
    spec = SOURCES[name]
    if from_dir is not None:
        archive_path = from_dir / Path(spec["url"]).name
        if archive_path.exists():
            return zipfile.ZipFile(archive_path), None
        return None, from_dir
    print(f"downloading {spec['url']}")
    with urllib.request.urlopen(spec["url"], timeout=120) as resp:
        return zipfile.ZipFile(io.BytesIO(resp.read())), None


def fetch(name, out, from_dir, seed):
    spec = SOURCES[name]
    archive, directory = open_source(name, from_dir)
    if name == "isolet":
        for split, member in spec["files"].items():
            rows = parse_rows(read_member(member, archive, directory), spec["features"], ",")
            write_rows(out / f"isolet_{split}.csv", rows, spec["features"])
    else:
        rows = parse_rows(read_member(spec["files"]["all"], archive, directory), spec["features"], None)
        train, test = stratified_split(rows, 0.1, seed)
        write_rows(out / "page_train.csv", train, spec["features"])
        write_rows(out / "page_test.csv", test, spec["features"])


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "data")
    ap.add_argument("--from-dir", type=Path, help="read archives or data files from here instead of downloading")
    ap.add_argument("--seed", type=int, default=0, help="seed for the PAGE train/test split")
    ap.add_argument("datasets", nargs="*", help="subset of: " + ", ".join(SOURCES))
    args = ap.parse_args()
    unknown = set(args.datasets) - set(SOURCES)
    if unknown:
        ap.error("unknown dataset(s): " + ", ".join(sorted(unknown)))
    args.out.mkdir(parents=True, exist_ok=True)
    for name in args.datasets or list(SOURCES):
        fetch(name, args.out, args.from_dir, args.seed)


if __name__ == "__main__":
    main()
