"""Replay of the degree-two construction, including where it disagrees
with the displayed formulas."""
from fractions import Fraction

from polarcyl import Dp2Params, build_dp2, star_check, verify_certificate

rep = build_dp2(Dp2Params(Fraction(1, 4), Fraction(1, 8)))
for c in rep.checks:
    tag = "ok" if c.passed else ("MISMATCH" if not c.required else "FAILED")
    print(f"{tag:9} {c.name}: {c.detail}")

print()
print("star condition:", star_check(rep.surface).status)
for ch in verify_certificate(rep.surface, rep.certificate).checks:
    print(f"certificate {ch.name}: {ch.status} ({ch.detail})")
