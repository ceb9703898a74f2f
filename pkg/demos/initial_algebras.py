"""Bounded C-initiality checks and the comparison map into a dual algebra."""

from mlab.census import all_algebras
from mlab.initiality import is_C_initial_bounded, terminal_C_initial_bounded, unique_map_to_dual
from mlab.structures import empty_coalgebra, std_algebra, std_coalgebra, succ_algebra, unit_coalgebra

family = all_algebras(3)
for n in range(3):
    rep = is_C_initial_bounded(std_algebra(n), std_coalgebra(n), family)
    print(f"<{n}> against <{n}>^ on {len(family)} algebras: {rep.verdict}")

rep = is_C_initial_bounded(std_algebra(1), std_coalgebra(2), family)
print("<1> against <2>^:", rep.verdict, rep.witness)

for C in (std_coalgebra(1), empty_coalgebra(), unit_coalgebra()):
    T = terminal_C_initial_bounded(C, 3)
    print(f"terminal search for {C!r}:", getattr(T, "note", None) or T)

lasso_alg = succ_algebra(["0", "1", "2"], "0", {"0": "1", "1": "2", "2": "1"})
print("map into the dual algebra:", unique_map_to_dual(lasso_alg, std_coalgebra(1)).as_dict()["map"])
