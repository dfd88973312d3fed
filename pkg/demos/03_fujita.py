"""Fujita invariant and rank from the exact threshold program."""
from fractions import Fraction

from polarcyl import DivisorClass, canonical_class, fujita_face, general_position

F = Fraction


def show(n, A):
    fd = fujita_face(general_position(n), A)
    print(f"n = {n}, A = {A}")
    print(f"  mu = {fd.mu}, r = {fd.r}, face = {[str(c) for c in fd.face_classes]}")
    # the dual class is nef, kills K + mu A and is positive on A
    print(f"  supporting class {fd.supporting_class}")


show(6, -canonical_class(6))
show(1, DivisorClass.of(3, -2))
n = 8
E = [DivisorClass.exceptional(i, n) for i in range(1, n + 1)]
show(n, -canonical_class(n) + F(9, 10) * (E[5] + E[6] + E[7]))
show(n, -canonical_class(n) + F(1, 4) * E[7])
