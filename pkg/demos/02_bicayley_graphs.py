"""Building BCay(Q_4n, S) and looking at it."""
from gqbci import GQ, build, connection_set, is_connected, right_translation
from gqbci.bicayley import is_graph_automorphism

g = GQ(3)
S = connection_set(g, "1,a,b")
gr = build(S)
print(gr.num_vertices, "vertices,", gr.num_edges, "edges")
print(gr.bitmap_text())
print(gr.edge_list_text().splitlines()[:5])

print("connected:", is_connected(S))
print("connected:", is_connected(connection_set(g, "1,a^2")))  # <a^2> has index 4

# every right translation is a graph automorphism
print(all(is_graph_automorphism(right_translation(x, gr), gr) for x in g.elements))

# moving to a normalized representative
T = connection_set(g, "a^3,b*a^2,b*a^5")
print(T.render(), "->", T.normalized().render())
