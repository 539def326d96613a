# coding: utf-8

# # Relations among the minors
#
# Send T[a,b] to the minor on columns a and b. Four families of quadrics lie in
# the kernel, and under the composite order they already form a Groebner basis.

# In[1]:

from twodet.blowup import (BlowupPresentation, RelationId, expected_lm, family_counts,
                           fiber_kernel_oracle, relation, verify_fiber_theorem, verify_rees_theorem)
from twodet.fields import GF


# In[2]:

p = BlowupPresentation(1, 4, GF())
print(p.ring.names)
print(family_counts(1, 4))


# In[3]:

for rid in [RelationId("UEN", (1, 2, 4)), RelationId("LEN", (1, 2, 3)), RelationId("PLU", (1, 2, 3, 4))]:
    f = relation(p, rid)
    print(rid, "|", f, "| lm", expected_lm(rid, 1, 4, p.ring))


# The elimination oracle computes the kernel from scratch, with no knowledge of
# the families.

# In[4]:

K = fiber_kernel_oracle(p)
print(len(K.gens), "generators in the reduced basis")


# In[5]:

print(verify_fiber_theorem(1, 4, GF()))


# In[6]:

cert = verify_rees_theorem(1, 4, GF())
cert["ok"], cert["spairs"], cert["spairs_coprime"]
