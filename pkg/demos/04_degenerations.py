# coding: utf-8

# # Degenerations between strata
#
# Two moves lower a type: peel a column off a scroll block, or merge two
# Jordan blocks. Together with rebalancing the scroll sizes they generate the
# degeneration order.

# In[1]:

from twodet.degenerations import (degenerates, family_merge, family_peel, flatness_check,
                                  parse_stratum, poset)
from twodet.fields import GF
from twodet.pencil import normal_form_blocks


# In[2]:

P = poset(6, 3)
print(len(P.nodes), "strata")
print("top", [s.label() for s in P.maximal()], "bottom", [s.label() for s in P.minimal()])
print(P.closure_agrees)


# In[3]:

for u, v in P.hasse[:8]:
    print(u.label(), "->", v.label())


# The drawn diagram joins (2^2,1;2) straight to (2,1^2;2,1). That pair is
# comparable, but only through (3,1^2;2).

# In[4]:

a, m, b = parse_stratum("(2^2,1;2)"), parse_stratum("(3,1^2;2)"), parse_stratum("(2,1^2;2,1)")
degenerates(a, m), degenerates(m, b)


# An explicit one-parameter family realises each move. Its fibres share one
# Hilbert function.

# In[5]:

F = GF()
fam = family_peel(normal_form_blocks(parse_stratum("(2,1;1)"), [0], F), 1, 2, F)
rep = flatness_check(fam, [0, 1, 2])
print(rep.hilbert[0], [t.label() for t in rep.types])


# In[6]:

fam = family_merge(normal_form_blocks(parse_stratum("(1^2;1^2)"), [0, 1], F), 1, 2, F)
rep = flatness_check(fam, [0, 1, 3])
rep.ok, [t.label() for t in rep.types]
