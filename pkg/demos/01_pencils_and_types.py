# coding: utf-8

# # Matrices of linear forms and their types
#
# A 2-row matrix of linear forms is a pencil of scalar matrices. Its Kronecker
# invariants decide which blocks it splits into, and the block sizes give the
# type (lambda; mu).

# In[1]:

import random

from twodet.fields import GF, QQ
from twodet.pencil import (Jordan, KWType, Scroll, build_matrix, classify, minors_ideal,
                           normal_form_blocks, primary_components, scramble)


# Blocks glue together side by side, each with fresh variables.

# In[2]:

M = build_matrix([Scroll(1), Scroll(1), Jordan(2, 5)], QQ)
print(M)
print(classify(M))


# The classifier does not care about coordinates. Mix rows, columns and
# variables at random and the type comes back unchanged.

# In[3]:

F = GF()
rng = random.Random(1)
N = scramble(build_matrix([Scroll(2), Scroll(1), Jordan(3, 7)], F), rng)
print(N.entry(1, 1))
print(classify(N))


# In[4]:

print(len(minors_ideal(M).gens), "minors")


# Each Jordan block contributes a linear prime; the scroll part gives one more.
# The multiplicities add up to c + 1.

# In[5]:

blocks = normal_form_blocks(KWType((1, 1), (1, 1)), [2, 3], QQ)
for prime, mult in primary_components(blocks, QQ):
    print(mult, [str(g) for g in prime.gens])
