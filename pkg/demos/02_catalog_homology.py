"""
Catalog relators in mod-2 homology
==================================

Each twist acts on H_1(N_{g,n}; Z/2) by a transvection.  A relator of the
twist subgroup has to act trivially, which is a cheap necessary check on
every instantiated relator.
"""

import numpy as np

from twistkit import catalog as cat
from twistkit.homology import SurfaceModel, evaluate, format_class, verify_relators
from twistkit.words import parse_word

# %% the g=3, n=1 presentation and the classes of its generators
g, n = 3, 1
p = cat.instantiate("t_ng1_odd", g, n)
model = SurfaceModel(g, n)
for gen, c in cat.generator_classes(p.alphabet, g, n).items():
    print(f"{gen:4s} {format_class(c, model)}")

# %% every relator evaluates to the identity
for check in verify_relators(p, model, cat.homology_assignment(p, g, n)):
    print(check.label, "pass" if check.passed else "FAIL")

# %% sweep all catalog entries used for g=3..8
opts = cat.CatalogOptions(subst_rho=True)
for n in (1, 0):
    for g in range(3 if n else 4, 9):
        q = cat.instantiate(cat.entry_for(g, n), g, n, opts)
        checks = verify_relators(q, SurfaceModel(g, n), cat.homology_assignment(q, g, n))
        print(f"g={g} n={n} {cat.entry_for(g, n):11s} {sum(c.passed for c in checks)}/{len(checks)}")

# %% a negative control: a1 a2 permutes three crosscap classes cyclically,
# so its fifth power is not the identity, while its sixth power is
m30 = SurfaceModel(3, 0)
assign = cat.homology_assignment(cat.instantiate("t_small", 3, 0), 3, 0)
for k in (5, 6):
    img = evaluate(parse_word(f"(a1 a2)^{k}"), assign, m30)
    print(f"(a1 a2)^{k} identity:", bool(np.array_equal(img, m30.identity())))
