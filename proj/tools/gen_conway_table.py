#!/usr/bin/env python3
"""Writes include/regorb/conway_table.hpp from the Conway polynomial database
shipped with the `galois` Python package (Frank Luebeck's tables).

Covers every p^k <= 2^16 with k >= 2.
"""

import os
import warnings

warnings.filterwarnings("ignore")
import galois  # noqa: E402

LIMIT = 1 << 16
OUT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..",
                   "include", "regorb", "conway_table.hpp")

rows = []
for p in galois.primes(LIMIT // 2 + 1):
    p = int(p)
    k = 2
    while p ** k <= LIMIT:
        poly = galois.conway_poly(p, k)
        coeffs = [int(c) for c in poly.coeffs[::-1]]  # ascending degree
        assert coeffs[-1] == 1 and len(coeffs) == k + 1
        rows.append((p, k, coeffs[:-1]))
        k += 1

with open(OUT, "w") as f:
    f.write("// Generated by tools/gen_conway_table.py. Do not edit.\n")
    f.write("#pragma once\n\n#include <cstdint>\n\n")
    f.write("namespace regorb::detail {\n\n")
    f.write("struct ConwayEntry {\n    std::uint32_t p;\n    std::uint32_t k;\n"
            "    std::uint32_t coeffs[16];\n};\n\n")
    f.write("inline constexpr ConwayEntry kConwayTable[] = {\n")
    for p, k, c in rows:
        f.write("    {%d, %d, {%s}},\n" % (p, k, ", ".join(map(str, c))))
    f.write("};\n\n} // namespace regorb::detail\n")
print(len(rows), "entries")
