"""
A quiet bridge that outspreads the hub
======================================

Node 0 has the most contacts, but every one of them is a weak tie.  Node 5
has only two contacts, each opening a chain of strong ties.  Ranked by
contact count the hub wins; spread on the network, the bridge does.
"""
import numpy as np

from socialsphere import Graph, latent_influencer_report, rank_nodes
from socialsphere.contagion import simulate_simple
from socialsphere.selection import SeedSet

weak = [(0, i, 0.25) for i in range(1, 5)]
strong = [(5, 6, 1.0), (5, 7, 1.0), (6, 8, 1.0), (7, 9, 1.0), (8, 10, 1.0), (9, 11, 1.0)]
g = Graph.from_edges(weak + strong)

contacts = g.degrees.astype(float)
print("contacts per node:", contacts.astype(int).tolist())
print("ranking by contacts:", rank_nodes(contacts)[:3])

# %%
# A weight of 0.25 means a distance of 4, so the hub needs four steps to
# reach anyone.  The bridge reaches two nodes per step straight away.
for v in range(g.n):
    curve = np.asarray(simulate_simple(g, [v], r=6))
    print(f"seed {v:>2}: infected {np.round(curve * g.n).astype(int).tolist()}")

# %%
# Treat the hub as the expected pick and the bridge as the suggested one.
# The report flags the bridge as latent (outside the top-1 by contacts) and
# its curve as dominating the hub's: never below, above at some step.
report = latent_influencer_report(g, g, SeedSet((5,), 1), SeedSet((0,), 1), contacts,
                                  spread=lambda h, s: simulate_simple(h, s, r=6))
print("\nlatent seeds:", report.latent, "verdict:", report.verdict)
