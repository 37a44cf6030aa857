#!/usr/bin/env python3
# Copyright 2026 The PerturbShield Authors
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

"""Converts WordNet database files into a TAB-separated synonym lexicon.

Reads the data.noun, data.verb, data.adj and data.adv files of a WordNet
3.x dict/ directory and writes one synset per line. Multi-word lemmas and
synsets left with fewer than two single-word members are skipped.

  wordnet_to_synonyms.py /usr/share/wordnet/dict synonyms.tsv
"""

import argparse
import pathlib
import sys

POS_FILES = ("data.noun", "data.verb", "data.adj", "data.adv")


def synsets(path):
    with open(path, encoding="latin-1") as f:
        for line in f:
            if line.startswith("  "):  # license header
                continue
            fields = line.split()
            count = int(fields[3], 16)
            words = fields[4:4 + 2 * count:2]
            yield words


def normalize(word):
    word = word.split("(")[0].lower()  # drop adjective markers like (a)
    if "_" in word or not word.replace("-", "").replace("'", "").isalpha():
        return None
    return word


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("dict_dir", type=pathlib.Path)
    parser.add_argument("output", type=pathlib.Path)
    parser.add_argument("--pos", default="noun,verb,adj,adv",
                        help="comma separated subset of noun,verb,adj,adv")
    args = parser.parse_args()

    wanted = {"data." + p for p in args.pos.split(",")}
    seen = set()
    written = 0
    with open(args.output, "w", encoding="utf-8") as out:
        out.write("# WordNet synsets, one per line, TAB-separated\n")
        for name in POS_FILES:
            if name not in wanted:
                continue
            path = args.dict_dir / name
            if not path.exists():
                sys.exit(f"missing {path}")
            for words in synsets(path):
                members = []
                for w in words:
                    n = normalize(w)
                    if n and n not in members:
                        members.append(n)
                key = tuple(sorted(members))
                if len(members) < 2 or key in seen:
                    continue
                seen.add(key)
                out.write("\t".join(members) + "\n")
                written += 1
    print(f"wrote {written} groups to {args.output}", file=sys.stderr)


if __name__ == "__main__":
    main()
