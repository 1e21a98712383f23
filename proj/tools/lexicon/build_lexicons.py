#!/usr/bin/env python3
# Copyright 2026 The Formality Spectrum Authors.
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
"""Regenerates resources/lexicons/{pos_lexicon,dictionary}.txt.

Source data is the Brill tagger lexicon and the Norvig spelling word list
as bundled in the TextBlob 0.18.0 wheel (MIT licensed):

    pip download textblob==0.18.0 --no-deps -d /tmp/tb
    python3 tools/lexicon/build_lexicons.py /tmp/tb/textblob-0.18.0-py3-none-any.whl

The curated lexicons (slang, netspeak, ...) are read from the output
directory so that the dictionary never contains informal respellings.
"""

import argparse
import pathlib
import re
import zipfile

PENN_TO_CLASS = {
    "NN": "noun", "NNS": "noun", "NNP": "noun", "NNPS": "noun",
    "VB": "verb", "VBD": "verb", "VBG": "verb", "VBN": "verb",
    "VBP": "verb", "VBZ": "verb", "MD": "verb",
    "JJ": "adjective", "JJR": "adjective", "JJS": "adjective",
    "RB": "adverb", "RBR": "adverb", "RBS": "adverb", "WRB": "adverb",
    "RP": "adverb",
    "PRP": "pronoun", "PRP$": "pronoun", "WP": "pronoun", "WP$": "pronoun",
    "WDT": "pronoun", "EX": "pronoun",
    "IN": "preposition", "TO": "preposition",
    "CC": "conjunction",
    "CD": "numeral",
    "UH": "interjection",
}

ARTICLES = {"a", "an", "the"}
DEMONSTRATIVES = {"this", "that", "these", "those"}
SUBORDINATORS = {
    "because", "if", "although", "though", "while", "whether", "unless",
    "since", "once", "whereas", "so", "than",
}

# Closed-class words whose Brill tag is unhelpful for the formality measure.
OVERRIDES = {
    "that": ["conjunction", "pronoun"],
    "i": ["pronoun"],
    "yes": ["adverb"],
    "no": ["adverb"],
    "ok": ["adjective"],
    "okay": ["adjective"],
    "well": ["adverb"],
    "please": ["adverb"],
    "hey": ["interjection"],
    "hi": ["interjection"],
    "hello": ["interjection"],
}

ROMAN = re.compile(r"^[ivxlcdm]+$")
TRIPLE = re.compile(r"([a-z])\1\1")
WORD = re.compile(r"^[a-z][a-z'.-]*$")


def read_curated(directory, name):
    path = directory / f"{name}.txt"
    entries = set()
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.strip().lower()
        if line and not line.startswith("#"):
            entries.add(line)
    return entries


def map_tag(word, tag):
    tag = tag.split("|")[0]
    if tag == "DT" or tag == "PDT":
        if word in ARTICLES:
            return "article"
        if word in DEMONSTRATIVES:
            return "pronoun"
        return "other"
    if tag == "IN" and word in SUBORDINATORS:
        return "conjunction"
    return PENN_TO_CLASS.get(tag, "other")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("wheel")
    parser.add_argument("--out", default="resources/lexicons")
    args = parser.parse_args()
    out = pathlib.Path(args.out)

    with zipfile.ZipFile(args.wheel) as z:
        lexicon = z.read("textblob/en/en-lexicon.txt").decode("utf-8")
        spelling = z.read("textblob/en/en-spelling.txt").decode("utf-8")

    interjections = read_curated(out, "interjections")
    informal = set(interjections)
    for name in ("slang", "netspeak"):
        informal |= read_curated(out, name)
    confusion = {"im", "dont", "cant", "didnt", "doesnt", "isnt", "wasnt",
                 "ive", "youre", "theyre", "thats", "whats", "wouldnt",
                 "couldnt", "shouldnt", "havent", "hasnt", "arent"}

    dictionary = set()
    for line in spelling.splitlines():
        if line.startswith(";;;") or not line.strip():
            continue
        word, count = line.split()
        if int(count) < 2 or not WORD.match(word):
            continue
        if len(word) == 1 and word not in ("a", "i", "o"):
            continue
        if TRIPLE.search(word) and not ROMAN.match(word):
            continue
        if word in informal or word in confusion:
            continue
        dictionary.add(word)

    tags = {}
    for line in lexicon.splitlines():
        if line.startswith(";;;") or not line.strip():
            continue
        parts = line.split()
        if len(parts) < 2:
            continue
        surface, tag = parts[0], parts[1]
        word = surface.lower()
        if word not in dictionary and word not in informal:
            continue
        # Lowercase entries win over capitalized ones.
        exact = surface == word
        if word in tags and not exact:
            continue
        tags[word] = [map_tag(word, tag)]
    for word, classes in OVERRIDES.items():
        tags[word] = classes
    for word in interjections:
        tags[word] = ["interjection"]
    # Greeting words only; other Brill interjections lose the tag.
    for word, classes in list(tags.items()):
        if classes[0] == "interjection" and word not in OVERRIDES:
            tags[word] = ["interjection"] if word in informal else ["other"]

    header = (
        "# version: 1\n"
        "# provenance: generated by tools/lexicon/build_lexicons.py from the\n"
        "#   TextBlob 0.18.0 wheel (MIT). {what}\n"
    )
    with open(out / "pos_lexicon.txt", "w", encoding="utf-8") as f:
        f.write("# lexicon: pos_lexicon\n")
        f.write(header.format(
            what="Brill lexicon (Brown + WSJ, MIT) mapped\n"
                 "#   from Penn tags onto coarse classes. Format: word<TAB>pos[,pos]."))
        for word in sorted(tags):
            f.write(f"{word}\t{','.join(tags[word])}\n")
    with open(out / "dictionary.txt", "w", encoding="utf-8") as f:
        f.write("# lexicon: dictionary\n")
        f.write(header.format(
            what="Norvig word list restricted to words seen\n"
                 "#   at least twice; informal respellings removed."))
        for word in sorted(dictionary):
            f.write(word + "\n")


if __name__ == "__main__":
    main()
