"""Two routes to the spectrum, and the multiplicities that separate graphs."""
from gqbci import GQ, build, charpoly_exact, connection_set, spectrum_via_reps

for n in (3, 4, 5):
    g = GQ(n)
    S, T = connection_set(g, "1,a,b"), connection_set(g, "1,a^2,b")
    es, et = charpoly_exact(build(S)), charpoly_exact(build(T))
    rs = spectrum_via_reps(S)
    assert rs.charpoly == es.charpoly
    r = 1 if n % 2 else 3
    print(f"n={n}: mult of {r}: S -> {es.multiplicity(r)}, T -> {et.multiplicity(r)}; "
          f"reps residue {rs.max_residue:.1e}")

# the perfect matching: (x^2 - 1)^8
print(charpoly_exact(build(connection_set(GQ(2), "1"))).charpoly)
print(charpoly_exact(build(connection_set(GQ(3), "1,a,b"))).to_csv())
