#!/usr/bin/env python3
"""Dominance and Pareto-front extraction on synthetic score vectors.

Also shows the pseudo-front used in single-axis signed-bias mode, where
queries strongly biased in the direction opposite to the original are
kept even though plain |bias| minimization would drop them.
"""

from bqr import (
    DimensionKind,
    DimensionSpec,
    ResultSet,
    ScoredQuery,
    pareto_front,
    pseudo_pareto_front,
    relevance_dim,
    signed_dim,
)

specs = (
    DimensionSpec("geo", DimensionKind.ENTROPY),
    DimensionSpec("gender", DimensionKind.ENTROPY),
    relevance_dim(),
)


def sq(name, *values):
    names = [s.name for s in specs] if len(values) == 3 else ["bias", "relevance"]
    return ScoredQuery(name, ResultSet(name, (), 0), tuple(zip(names, values)))


candidates = [
    sq("broad rewrite", 0.9, 0.1, 0.5),
    sq("balanced rewrite", 0.5, 0.5, 0.5),
    sq("weak rewrite", 0.4, 0.4, 0.4),   # dominated by "balanced rewrite"
    sq("near duplicate", 0.0, 0.0, 0.95),
]

front = pareto_front(candidates, specs)
print("candidates:")
for c in candidates:
    mark = "*" if c in front else " "
    print(f" {mark} {c.query:18s} {c.values}")
print("front members are starred: nothing on the front is beaten everywhere at once\n")

# signed single-axis mode: original bias +0.8
signed_specs = (signed_dim("bias"), relevance_dim())
signed_candidates = [
    sq("mild counterweight", +0.2, 0.5),
    sq("strong opposite", -0.9, 0.9),
    sq("weak opposite", -0.5, 0.1),
]
plain = pareto_front(signed_candidates, signed_specs)
pseudo = pseudo_pareto_front(signed_candidates, signed_specs, "bias", original_value=+0.8)
print("signed mode, original bias +0.8:")
print("  plain front :", [c.query for c in plain])
print("  pseudo front:", [c.query for c in pseudo])
print("the pseudo front keeps the strongest opposite-direction query")
