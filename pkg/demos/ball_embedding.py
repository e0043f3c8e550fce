"""
Certified ball embeddings
=========================

A ball B(a) embeds into the domain with weights (b; w) when the ECH
inequality holds for every k.  Past an explicit threshold the inequality
follows from Cauchy-Schwarz, so a finite check is a proof.
"""

from fractions import Fraction

from fiberwise.ech import WeightSequence, embed_ball_check, gromov_width_witness

W = WeightSequence(3, (1,) * 6)

# The largest ball, with the constraint that pins it down.
width, k, d = gromov_width_witness(W)
print(f"Gromov width {width}, binding at k = {k} with the ball counted {d} times")

for a in (Fraction(3, 2), Fraction(8, 5)):
    cert = embed_ball_check(W, a)
    line = f"a = {a}: {cert.verdict}, checked k <= {cert.explicit_k_max} (tail from {cert.tail_bound_k})"
    if cert.witness_k is not None:
        line += f"; at k = {cert.witness_k} union {cert.witness_lhs} > ball {cert.witness_rhs}"
    print(line)

# With five unit balls the volume is filled exactly, and a Cremona
# reduction certifies the full filling.
cert = embed_ball_check(WeightSequence(3, (1,) * 5), 2)
print("five balls plus B(2):", cert.verdict, "via", cert.tail_rule)
