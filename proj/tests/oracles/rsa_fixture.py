#!/usr/bin/env python3
"""Brute-force RSA chain for the 3-meaning / 3-utterance fixture.

Dense tables in plain probability space (no log tricks), written out as a C++ header
that the unit tests compare against. Rerun with:
    python3 tests/oracles/rsa_fixture.py > tests/rsa_fixture_values.hpp
"""
import math

PRIOR = [0.5, 0.3, 0.2]          # P(m)
COST = [0.0, 1.0, 2.0]           # c(u)
LIT = [[1, 1, 1],                # u0 covers every meaning
       [1, 1, 0],                # u1 covers m0, m1
       [1, 0, 0]]                # u2 covers m0 only
ALPHA, ALPHA_PRIME, K = 2.0, 1.0, 10

NU, NM = len(COST), len(PRIOR)


def listener_from(weights):
    table = []
    for u in range(NU):
        z = sum(weights[u][m] for m in range(NM))
        table.append([weights[u][m] / z if z > 0 else 0.0 for m in range(NM)])
    return table


L = [listener_from([[LIT[u][m] * PRIOR[m] for m in range(NM)] for u in range(NU)])]
S = [None]
for j in range(1, K + 1):
    prev = L[-1]
    s = [[0.0] * NM for _ in range(NU)]
    for m in range(NM):
        score = {}
        for u in range(NU):
            if prev[u][m] > 0:
                score[u] = math.exp(ALPHA * (math.log(prev[u][m]) - ALPHA_PRIME * COST[u]))
        z = sum(score.values())
        for u, v in score.items():
            s[u][m] = v / z
    S.append(s)
    L.append(listener_from([[s[u][m] * PRIOR[m] for m in range(NM)] for u in range(NU)]))


def emit(name, tables, first):
    print(f"inline constexpr double {name}[{K + 1}][{NU}][{NM}] = {{")
    for j, t in enumerate(tables):
        if t is None:
            t = [[0.0] * NM for _ in range(NU)]
        rows = ", ".join("{" + ", ".join(repr(x) for x in row) + "}" for row in t)
        print(f"    {{{rows}}},  // j = {j}")
    print("};")


print("// Generated by tests/oracles/rsa_fixture.py; do not edit.")
print("#pragma once")
print("namespace rsa_fixture {")
print(f"inline constexpr double kPrior[{NM}] = {{{', '.join(repr(x) for x in PRIOR)}}};")
print(f"inline constexpr double kCost[{NU}] = {{{', '.join(repr(x) for x in COST)}}};")
print(f"inline constexpr int kLiteral[{NU}][{NM}] = {{{', '.join('{' + ', '.join(map(str, r)) + '}' for r in LIT)}}};")
emit("kListener", L, 0)
emit("kSpeaker", S, 1)
print("}  // namespace rsa_fixture")
