"""
Between the regimes
===================

Upper envelopes of |det| / t^n as a function of x = s/t, from the
distinct determinant polynomials of all {0, t} patterns.
"""
from fractions import Fraction

import bohemian as bh
from bohemian.transitions import distinct_polynomials, maximizer_profiles

for n in (4, 5, 6):
    print(n, len(distinct_polynomials(n)[0]), "distinct polynomials")

# U up to x = 1, then the both-swapped U
print(bh.envelope(4, Fraction(1, 2), 2).serialize())

# n = 5 has a touch point at x = 2 where -4x^3 meets x^4 + 4x^2
print(bh.envelope(5, 1, 20).serialize())

# n = 6 over the whole open range
d = bh.envelope(6, Fraction(1, 10), Fraction(144, 5))
for seg in d.segments:
    print(seg.lo, seg.hi, [str(q) for q in seg.polys])

# how far the both-swapped U stays maximal
for n in (4, 5, 6):
    print(bh.epsilon_of_n(n).serialize())

# crossings need not be rational
print(bh.envelope_of([bh.UniPoly([0, 0, 1]), bh.UniPoly([2])], 1, 2).serialize())

# t-counts and sign profiles of the maximizers, reported only
for x in (Fraction(3, 2), 5, 100):
    rec = bh.maximizer_at_ratio(6, x)
    print(x, [(p.code, p.t_count, p.signs) for p in maximizer_profiles(rec)])
