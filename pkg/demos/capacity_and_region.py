"""Secret key capacities and the achievable discussion-rate region."""

from fractions import Fraction

from hyperkey import (
    Hypergraph,
    RateTuple,
    communication_complexity,
    constrained_capacity,
    in_region,
    region_spec,
    unconstrained_capacity,
)

h = Hypergraph(
    "123456",
    [("a", "124", 1), ("b", "235", 3), ("c", "136", 2)],
)

print("unconstrained capacity:", unconstrained_capacity(h))
print("communication complexity:", communication_complexity(h))

# capacity as a function of the total discussion budget R
for budget in (0, Fraction(1, 2), 1, 2, 5):
    print(f"  C_S({budget}) = {constrained_capacity(h, budget)}")

# the region ties per-user discussion rates to the key rate
spec = region_spec(h)
print("key rate cap:", spec.key_cap)
print("constraints (subset >= coefficient * key rate):")
for subset, coeff in spec.constraints:
    print(f"  r({'+'.join(sorted(subset))}) >= {coeff} * r_K")

# membership checks at the full key rate
zero = {v: 0 for v in h.vertices}
good = RateTuple(Fraction(1), {**zero, "1": 1, "2": 1})
check = in_region(h, good)
print("rates 1,1,0 in region:", check.ok)

bad = RateTuple(Fraction(1), {**zero, "1": 1})
check = in_region(h, bad)
print("rates 1,0,0 in region:", check.ok)
subset, coeff = check.violated
print("  violated:", sorted(subset), "needs", coeff, "* r_K")

# halving every rate stays in the region: the constraints scale with r_K
half = RateTuple(Fraction(1, 2), {**zero, "1": Fraction(1, 2), "2": Fraction(1, 2)})
print("half of the good point at half key rate:", in_region(h, half).ok)
