"""Moore automata acting on algebras for the 'bit times words' functor."""

from pathlib import Path

from mlab.mixed import gf_convolution, gf_measuring_count, unit_automaton, unit_iso_holds
from mlab.textio import load_structure

DATA = Path(__file__).parent / "data"

parity = load_structure(DATA / "parity.aut")
flip = load_structure(DATA / "flip.gf")

conv = gf_convolution(parity, flip)
print(f"[parity, flip] has {len(conv.carrier)} elements")
print("unit automaton transports flip unchanged:", unit_iso_holds(flip))
print("measurings by parity from flip to itself:", gf_measuring_count(parity, flip, flip))
print("measurings by the unit automaton:", gf_measuring_count(unit_automaton(["a"]), flip, flip))
