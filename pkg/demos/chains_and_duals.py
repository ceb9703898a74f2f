"""Walk through the countdown coalgebras, their duals and the chains they measure."""

from pathlib import Path

from mlab.measuring import convolution_algebra, enumerate_measurings
from mlab.structures import lazy_saturation, std_algebra
from mlab.textio import load_structure
from mlab.universal import classify_universal, dual_algebra, dual_coalgebra_classified

DATA = Path(__file__).parent / "data"

two = load_structure(DATA / "two.alg")
countdown = load_structure(DATA / "countdown2.coalg")
loop = load_structure(DATA / "loop3.alg")

print("measurings countdown2 x two -> two:")
for m in enumerate_measurings(countdown, two, two):
    print("  ", m.as_json())

conv = convolution_algebra(countdown, two)
x = conv.zero
print("successors of zero in [countdown2, two]:")
for m in range(4):
    print(f"   s^{m}(0) = {x.values}")
    x = conv.succ(x)

lasso = lazy_saturation(dual_algebra(countdown))
print(f"dual algebra saturates after {lasso.prefix} steps at {lasso.top.values}")
print("dual coalgebra of <4>:", dual_coalgebra_classified(std_algebra(4)))

for target in (two, loop):
    print(f"universal measuring two -> {target.name}:", classify_universal(two, target))
print("universal measuring loop3 -> loop3:", classify_universal(loop, loop))
