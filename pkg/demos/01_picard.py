"""The Picard lattice of a blow-up of the plane, and a small tower."""
from fractions import Fraction

from polarcyl import CenterSpec, DivisorClass, TowerBuilder, canonical_class, proper_transform

n = 6
K = canonical_class(n)
print("K =", K, " K^2 =", K.square())

# a conic through five of the six points is a (-1)-curve
conic = DivisorClass.plane_curve(2, [1, 1, 1, 1, 1, 0])
print("conic:", conic, " C^2 =", conic.square(), " K.C =", K.dot(conic))

# classes are rational; scaling keeps everything exact
A = -K + Fraction(1, 3) * DivisorClass.exceptional(6, n)
print("A =", A, " A^2 =", A.square())

# blow up a point on a line, then the point where the new curve meets it
tb = TowerBuilder()
tb.curve("L", 1)
tb.blow_up(CenterSpec.on_curves("E1", "L"))
tb.blow_up(CenterSpec.intersection_of("E2", "E1", "L"))
spec = tb.build()
for name in ("L", "E1", "E2"):
    c = proper_transform(spec, name)
    print(f"{name}: {c}  self-intersection {c.square()}")
