"""(-1)- and (-2)-classes, the Mori cone generators and the ampleness test."""
from fractions import Fraction

from polarcyl import DivisorClass, canonical_class, general_position, is_ample
from polarcyl import minus_one_classes, minus_two_classes, mori_generators

for n in range(1, 9):
    print(f"n = {n}: {len(minus_one_classes(n))} (-1)-classes, {len(minus_two_classes(n))} effective (-2)-classes")

# on the cubic surface the 27 lines generate the cone of curves
gens = mori_generators(general_position(6))
print("cubic surface generators:", len(gens))

# ampleness is positivity on every generator
K = canonical_class(6)
E6 = DivisorClass.exceptional(6, 6)
for x in (Fraction(1, 2), Fraction(1), Fraction(3, 2)):
    rep = is_ample(general_position(6), -K + x * E6)
    note = "" if rep.ample else f" (degree {rep.witness_value} on {rep.witness})"
    print(f"-K + {x} E6 ample: {rep.ample}{note}")
