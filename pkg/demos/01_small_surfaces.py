"""
Twist subgroups of the smallest surfaces
========================================

Start from presentations of the full mapping class groups of N_{2,0},
N_{2,1} and N_{3,0}, enumerate the cosets of the parity kernel of the
crosscap slide y, and rewrite the kernel presentation.
"""

from twistkit import catalog as cat
from twistkit.enumeration import SubgroupSpec, todd_coxeter, twist_subgroup
from twistkit.presentation import abelianization, format_presentation

# %% the input presentations
for name in ("m_n2_0", "m_n2_1", "m_n3_0"):
    p = cat.catalog_file(name)
    print(format_presentation(p, [name]))

# %% coset enumeration: the kernel has index 2, with transversal {1, y}
for name in ("m_n2_0", "m_n2_1", "m_n3_0"):
    p = cat.catalog_file(name)
    t = todd_coxeter(p, SubgroupSpec.parity_of("y", p.alphabet))
    print(name, "index", t.index, "transversal", [str(w) or "1" for w in t.transversal])

# %% the whole group M(N_{2,0}) is finite of order 4; M(N_{2,1}) is infinite,
# so enumerating the trivial subgroup stops at the coset cap
print("order of M(N_{2,0}):", todd_coxeter(cat.catalog_file("m_n2_0")).index)
print("M(N_{2,1}):", todd_coxeter(cat.catalog_file("m_n2_1"), max_cosets=2000).status)

# %% Reidemeister-Schreier, then simplification
for name in ("m_n2_0", "m_n2_1", "m_n3_0"):
    q = twist_subgroup(cat.catalog_file(name))
    print(format_presentation(q, [f"kernel of {name}"]))
    print("abelianization:", abelianization(q))
    print()
