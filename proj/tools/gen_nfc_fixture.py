#!/usr/bin/env python3
"""Regenerates tests/fixtures/nfc_cases.txt: input/expected NFC pairs, hex-encoded UTF-8.

Run from the repository root:  python3 tools/gen_nfc_fixture.py
"""

import random
import unicodedata

POOLS = [
    list(range(0x20, 0x80)),                     # ASCII
    list(range(0xC0, 0x180)),                    # Latin-1 / Extended-A
    list(range(0x300, 0x370)),                   # combining diacritics
    list(range(0x390, 0x3D0)),                   # Greek
    list(range(0x410, 0x450)),                   # Cyrillic
    list(range(0x1E00, 0x1F00)),                 # Latin Extended Additional
    list(range(0x1F00, 0x2000)),                 # Greek Extended
    list(range(0xAC00, 0xD7A4)),                 # Hangul syllables
    [0x1100, 0x1161, 0x11A8, 0x1102, 0x1165],    # Hangul jamo
    list(range(0x1D15E, 0x1D165)),               # musical symbols (supplementary)
    [0x212B, 0x2126, 0x0F73, 0x0F81, 0x0344],    # singleton / odd decompositions
]


def main():
    rng = random.Random(20250810)
    lines = []
    for _ in range(400):
        n = rng.randint(1, 24)
        cps = []
        for _ in range(n):
            pool = rng.choice(POOLS)
            cps.append(rng.choice(pool))
        s = "".join(chr(c) for c in cps)
        t = unicodedata.normalize("NFC", s)
        lines.append(s.encode("utf-8").hex() + "\t" + t.encode("utf-8").hex())
    # targeted cases
    for s in ["Á", "q̣̇", "q̣̇", "ḍ̇",
              "Å", "Å", "Å", "gärten", "blåbær",
              "각", "각", "ཱི", ""]:
        t = unicodedata.normalize("NFC", s)
        lines.append(s.encode("utf-8").hex() + "\t" + t.encode("utf-8").hex())
    with open("tests/fixtures/nfc_cases.txt", "w") as f:
        f.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
