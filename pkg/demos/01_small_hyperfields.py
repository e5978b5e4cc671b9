"""
Small hyperfields by hand and by search
=======================================

Builds the two-element Krasner hyperfield, breaks one of its tables, and
then lets the exhaustive search find every hyperfield on three elements.
"""

from hyperspaces import check_hyperfield, krasner_hyperfield, replay
from hyperspaces.fixtures import MUTATIONS, mutate
from hyperspaces.search import SearchSpec, enumerate_hyperfields

# %%
# In the Krasner hyperfield 1 + 1 is the whole carrier.
K = krasner_hyperfield()
print("1 + 1 =", K.add(1, 1))
print("hyperfield:", check_hyperfield(K).is_hyperfield)

# %%
# A single changed cell is enough to break it, and every violation comes
# with a witness that can be evaluated again on its own.
m = MUTATIONS[0]
F = mutate(m)
r = check_hyperfield(F)
print(m.label, "->", r.violations[0])
print("replays:", all(replay(F, v) for v in r.violations))

# %%
# Three elements, 0 and 1 pinned: the census lists every table up to
# relabeling of the remaining element.
census = enumerate_hyperfields(SearchSpec(3, kind="hyperfield"))
for e in census.entries:
    print(e.key)
