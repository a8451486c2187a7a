#!/usr/bin/env python3
"""Regenerates include/norllm/detail/unicode_tables.hpp from Python's unicodedata.

Emits three tables used by the NFC normalizer:
  - combining classes (cp -> ccc) for all nonzero-ccc code points
  - full canonical decompositions (Hangul excluded, handled algorithmically)
  - primary composition pairs (composition exclusions already filtered out)

Run from the repository root:  python3 tools/gen_unicode_tables.py
"""

import sys
import unicodedata


def canonical_decomp_pair(cp):
    d = unicodedata.decomposition(chr(cp))
    if not d or d.startswith("<"):
        return None
    return [int(x, 16) for x in d.split()]


def full_decomp(cp, out):
    parts = canonical_decomp_pair(cp)
    if parts is None:
        out.append(cp)
        return
    for p in parts:
        full_decomp(p, out)


def main():
    ccc = []
    decomp = {}
    compose = {}

    for cp in range(0x110000):
        if 0xAC00 <= cp <= 0xD7A3:  # Hangul syllables: algorithmic
            continue
        c = unicodedata.combining(chr(cp))
        if c != 0:
            ccc.append((cp, c))
        parts = canonical_decomp_pair(cp)
        if parts is not None:
            full = []
            full_decomp(cp, full)
            decomp[cp] = full
            if len(parts) == 2:
                a, b = parts
                # a pair decomposition is a primary composite iff NFC maps it back
                if unicodedata.normalize("NFC", chr(a) + chr(b)) == chr(cp):
                    compose[(a, b)] = cp

    buf = []
    decomp_index = []
    for cp in sorted(decomp):
        seq = decomp[cp]
        decomp_index.append((cp, len(buf), len(seq)))
        buf.extend(seq)

    out = sys.stdout
    out.write("// Generated by tools/gen_unicode_tables.py (Unicode %s). Do not edit.\n"
              % unicodedata.unidata_version)
    out.write("#pragma once\n\n#include <cstdint>\n\nnamespace norllm::detail {\n\n")

    out.write("struct CccEntry { uint32_t cp; uint8_t ccc; };\n")
    out.write("inline constexpr CccEntry kCombiningClass[] = {\n")
    for cp, c in ccc:
        out.write("  {0x%X,%d},\n" % (cp, c))
    out.write("};\n\n")

    out.write("struct DecompEntry { uint32_t cp; uint32_t offset; uint32_t len; };\n")
    out.write("inline constexpr DecompEntry kDecomp[] = {\n")
    for cp, off, n in decomp_index:
        out.write("  {0x%X,%d,%d},\n" % (cp, off, n))
    out.write("};\n\n")

    out.write("inline constexpr uint32_t kDecompBuf[] = {\n")
    for i in range(0, len(buf), 12):
        out.write("  " + ",".join("0x%X" % x for x in buf[i:i + 12]) + ",\n")
    out.write("};\n\n")

    out.write("struct ComposeEntry { uint64_t key; uint32_t composed; };\n")
    out.write("inline constexpr ComposeEntry kCompose[] = {\n")
    for (a, b), cp in sorted(compose.items()):
        out.write("  {0x%XULL,0x%X},\n" % ((a << 32) | b, cp))
    out.write("};\n\n")

    out.write("} // namespace norllm::detail\n")


if __name__ == "__main__":
    main()
