"""Q_4n arithmetic, automorphisms and fusion."""
from gqbci import GQ

g = GQ(3)  # Q_12
print(g.order, [g.render(x) for x in g.elements])

b, a = g.parse("b"), g.parse("a")
print("b^2 =", g.render(g.mul(b, b)))             # a^3
print("b^-1 a b =", g.render(g.prod([g.inv(b), a, b])))  # a^-1
print("|ba^2| =", g.element_order(g.parse("b*a^2")))

auts = g.automorphisms()
print(len(auts), "automorphisms; formula gives", g.aut_count_formula())
sig = g.sigma(5, 1)
print("sigma_{5,1}:", {g.render(x): g.render(g.apply(sig, x)) for x in (a, b)})

# equal orders but not fused: the witness behind n = 4 failing
h = GQ(4)
print(h.are_fused(h.parse("a^2"), h.parse("b")))

for n in (3, 4):
    holds, _ = GQ(n).is_homogeneous()
    print(f"Q_{4 * n} homogeneous:", holds)
