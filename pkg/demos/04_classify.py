"""Classifier verdicts along the families with known answers."""
from fractions import Fraction

from polarcyl import DivisorClass, canonical_class, classify, explain, general_position, nine_points

F = Fraction

# anticanonical polarizations switch at K^2 = 4
for n in range(0, 9):
    v = classify(general_position(n), -canonical_class(n))
    print(f"n = {n}, K^2 = {v.K2}: {v.status.value} ({v.reason.value})")

# the auxiliary family comes with a checkable certificate
n = 6
v = classify(general_position(n), -canonical_class(n) + F(15, 16) * DivisorClass.exceptional(6, n))
print()
print(explain(v))

# nine points: below 1/4, inside the open window, above 7/8
print()
for x in (F(1, 4), F(1, 2), F(9, 10)):
    v = classify(*nine_points(x))
    print(f"x = {x}: {v.status.value} ({v.reason.value})")
