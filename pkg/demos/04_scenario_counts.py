"""Decoding work (scenario likelihoods per codeword) for each policy.

Counts do not depend on the received sequence, so they are computed
statically.  Without deletions every policy reduces to plain SC with
N(1 + log2 N) node updates.
"""

from polar_deletion.cli import COUNT_HEADER, count_row

print("no deletions:")
for N in (64, 512):
    print("  ", dict(zip(COUNT_HEADER, count_row(N, 0, 1e-6, 1e-4))))

print("\nd=5, tau1=1e-6, pe_bound=1e-4")
print("".join(f"{h:>10}" for h in COUNT_HEADER))
for N in (512, 1024, 2048):
    print("".join(f"{v:>10}" for v in count_row(N, 5, 1e-6, 1e-4)))
