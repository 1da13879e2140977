"""Deciding BCay(G,S) = BCay(G,T), and the pairs that are not explained by g S^alpha."""
from gqbci import GQ, bcay_equivalent, build, connection_set, graphs_isomorphic

g = GQ(4)
S, T = connection_set(g, "1,a^2"), connection_set(g, "1,b")
res = graphs_isomorphic(build(S), build(T))
print(res.isomorphic, res.nodes, "search nodes")
print("T = g S^alpha?", bcay_equivalent(S, T))  # None: a BCI failure

U = connection_set(g, "1,a^3")
w = bcay_equivalent(connection_set(g, "1,a"), U)
print("witness:", w.to_json(connection_set(g, "1,a")))

g3 = GQ(3)
res = graphs_isomorphic(build(connection_set(g3, "1,a,b")), build(connection_set(g3, "1,a^2,b")))
print(res.certificate)
