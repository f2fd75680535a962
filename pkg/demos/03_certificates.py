"""
Replaying derivation certificates
=================================

A certificate is a start word plus a list of rewriting steps; the checker
replays them and must end at the target.  Every step also preserves the
mod-2 image of the word, which gives an independent sanity check.
"""

import numpy as np

from twistkit.certificate import check_certificate, parse_certificate, shipped_certificates, step_images

# %% replay the shipped certificates
for name, text in shipped_certificates().items():
    print(name, check_certificate(text))

# %% the words along one derivation
text = shipped_certificates()["bbar2_2.cert"]
report = check_certificate(text)
for i, w in enumerate(report.words):
    print(i, str(w) or "1")

# %% the homology image is constant along the derivation
cert = parse_certificate(text)
images = step_images(cert, report)
print("constant image:", all(np.array_equal(m, images[0]) for m in images))

# %% tampering with one letter is caught at that step
lines = text.splitlines()
i = next(k for k, line in enumerate(lines) if line.startswith("step rel Bbar4_2"))
lines[i] = lines[i].replace("f a2 f' a2'", "f a2 f a2'", 1)
print(check_certificate("\n".join(lines) + "\n"))
