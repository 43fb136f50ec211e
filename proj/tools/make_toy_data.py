#!/usr/bin/env python3
# Copyright 2026 The phonefront Authors
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
"""Generates the bundled toy data and the rule-oracle golden lexicons.

Two invented orthographies are used:
  * "plain": one letter, one phone (c -> t͡s, g -> ɡ, the rest as IPA).
  * "rec": like plain but with the digraphs sh -> ʃ and ng -> ŋ and c -> k.

Usage: make_toy_data.py <repo root>
"""

import collections
import os
import random
import sys

PLAIN_ONSETS = list("bdfghklmnprstvwzcj")
PLAIN_VOWELS = list("aeiouy")
PLAIN_CODAS = ["", "", "n", "s", "t", "r", "l", "m"]

REC_ONSETS = ["b", "d", "f", "g", "h", "k", "l", "m", "n", "p", "r", "s",
              "t", "v", "w", "sh", "c"]
REC_VOWELS = list("aeiou")
REC_CODAS = ["", "", "", "n", "ng", "s", "t", "r", "l", "sh"]


def plain_phones(word):
    out = []
    for ch in word:
        out.append({"c": "t͡s", "g": "ɡ"}.get(ch, ch))
    return out


def rec_phones(word):
    out = []
    i = 0
    while i < len(word):
        pair = word[i:i + 2]
        if pair == "sh":
            out.append("ʃ")
            i += 2
        elif pair == "ng":
            out.append("ŋ")
            i += 2
        else:
            out.append({"c": "k", "g": "ɡ"}.get(word[i], word[i]))
            i += 1
    return out


def make_word(rng, onsets, vowels, codas, max_syllables):
    n = rng.randint(1, max_syllables)
    return "".join(rng.choice(onsets) + rng.choice(vowels) + rng.choice(codas)
                   for _ in range(n))


def distinct_words(rng, count, onsets, vowels, codas, max_syllables,
                   exclude=()):
    words = []
    seen = set(exclude)
    while len(words) < count:
        w = make_word(rng, onsets, vowels, codas, max_syllables)
        if w not in seen:
            seen.add(w)
            words.append(w)
    return words


def write(path, text):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


def lexicon_text(entries):
    """entries: word -> list of (phones, count), majority first."""
    lines = []
    for word in sorted(entries, key=lambda w: w.encode("utf-8")):
        for phones, count in entries[word]:
            lines.extend([word + "\t" + " ".join(phones) + "\n"] * count)
    return "".join(lines)


def majority_order(observed):
    """observed: list of (phones tuple) in observation order."""
    counts = collections.OrderedDict()
    for p in observed:
        counts[p] = counts.get(p, 0) + 1
    winner = min(counts, key=lambda p: (-counts[p], len(p), " ".join(p)))
    rest = [(p, c) for p, c in counts.items() if p != winner]
    ordered = [(winner, counts[winner])] + rest
    # Stable sort by count descending keeps observation order among ties.
    return sorted(ordered, key=lambda pc: -pc[1])


def make_plain(root, rng):
    train = distinct_words(rng, 300, PLAIN_ONSETS, PLAIN_VOWELS, PLAIN_CODAS, 3)
    oov = distinct_words(rng, 80, PLAIN_ONSETS, PLAIN_VOWELS, PLAIN_CODAS, 3,
                         exclude=train)
    write(os.path.join(root, "data/toy/g2p_train.dict"),
          "".join(w + "\t" + " ".join(plain_phones(w)) + "\n" for w in train))

    lines = []
    used = set()
    for _ in range(40):
        tokens = []
        for _ in range(rng.randint(3, 8)):
            w = rng.choice(train) if rng.random() < 0.6 else rng.choice(oov)
            used.add(w)
            tokens.append(w.capitalize() if rng.random() < 0.15 else w)
        lines.append(" ".join(tokens) + "\n")
    write(os.path.join(root, "data/toy/texts.txt"), "".join(lines))
    write(os.path.join(root, "tests/golden/g2p_apply.dict"),
          lexicon_text({w: [(plain_phones(w), 1)] for w in used}))


def make_rec(root, rng):
    lexicon = distinct_words(rng, 200, REC_ONSETS, REC_VOWELS, REC_CODAS, 2)
    weights = [1.0 / (i + 1) ** 0.6 for i in range(len(lexicon))]
    observed = collections.defaultdict(list)
    rows = []
    for u in range(150):
        words = rng.choices(lexicon, weights=weights, k=rng.randint(4, 9))
        spans = []
        for w in words:
            phones = rec_phones(w)
            # A few recognizer slips: one phone replaced by a neighbour.
            if len(phones) > 2 and rng.random() < 0.06:
                i = rng.randrange(len(phones))
                phones = phones[:i] + [{"p": "b", "t": "d", "k": "ɡ", "s": "z",
                                        "e": "ɛ", "o": "ɔ"}.get(phones[i], "ə")
                                       ] + phones[i + 1:]
            observed[w].append(tuple(phones))
            spans.append(" ".join(phones))
        rows.append("utt%03d\t%s\t%s\n" % (u + 1, " ".join(words),
                                            " | ".join(spans)))
    header = "# utt_id\ttext\tphones (| marks word boundaries)\n"
    write(os.path.join(root, "data/toy/rec_corpus.tsv"), header + "".join(rows))
    write(os.path.join(root, "tests/golden/build_dict.dict"),
          lexicon_text({w: majority_order(obs) for w, obs in observed.items()}))


def main():
    root = sys.argv[1] if len(sys.argv) > 1 else "."
    make_plain(root, random.Random(20240613))
    make_rec(root, random.Random(150))


if __name__ == "__main__":
    main()
