# coding: utf-8

# # The initial complexes
#
# The leading monomials are squarefree quadrics, so the initial ideals are
# Stanley-Reisner ideals of flag complexes. Counting facets gives the
# multiplicity; facet size gives the dimension.

# In[1]:

from twodet.complexes import (build_delta_F, build_delta_R, count_formula, hochster_betti,
                              reisner_cm, sr_hilbert, verify_link_iso)
from twodet.fields import GF, QQ


# In[2]:

K = build_delta_F(0, 4)
for f in K.facets:
    print(f)
print(K.f_vector())


# Facet counts against the closed forms.

# In[3]:

for d, e in [(2, 2), (1, 4), (3, 4)]:
    print((d, e), len(build_delta_F(d, e)), count_formula("F", d, e))


# In[4]:

for e in range(4, 8):
    print(e, len(build_delta_R(1, e)), 2 ** (e + 2) - (e + 1) ** 2 - 3)


# In[5]:

H = sr_hilbert(build_delta_R(1, 4))
H.dimension, H.multiplicity


# Reisner's criterion over two fields.

# In[6]:

for field in (QQ, GF(2)):
    print(field.descriptor(), reisner_cm(build_delta_F(1, 4), field).ok)


# In[7]:

print(hochster_betti(build_delta_F(0, 4)))
print(verify_link_iso(4))
