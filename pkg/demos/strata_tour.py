#!/usr/bin/env python3
"""A guided tour of the blowup strata combinatorics.

Enumerates the rooted-partition strata of a small marked-point set, shows
the degeneration order and a compatible linear extension, and walks the
three structural maps: the bubble collapse, the puncture merge, and the
forgetful map with its fibers.

    python demos/strata_tour.py
"""

from tautrec import (
    AUX_P,
    Label,
    canonical_text,
    enumerate_A1,
    enumerate_A1_IJ,
    eta,
    fiber,
    forget_stratum,
    i_labels,
    j_labels,
    linear_extension,
    mu,
    pair_stratum,
    precedes,
    sentinel_fiber_count,
)

BAR = "-" * 64

I = i_labels(2)
J = j_labels(2)
i0, i1 = sorted(I, key=Label.sort_key)
j0, j1 = sorted(J, key=Label.sort_key)

print(BAR)
print("1. Strata of two blown-up points i0, i1 and two punctures j0, j1")
print(BAR)
strata = enumerate_A1_IJ(I, J)
everything = enumerate_A1(I | J)
print(f"  rooted partitions of the four labels:        {len(everything)}")
print(f"  ... whose every bubble carries an i-label:   {len(strata)}")
for rho in sorted(strata, key=canonical_text):
    print(f"    {canonical_text(rho)}")
print()

print(BAR)
print("2. Degeneration order and a compatible blowup order")
print(BAR)
order = linear_extension(strata)
print("  one big bubble is the unique minimal stratum; a valid blowup")
print("  order lists every stratum after all of its degenerations:")
for k, rho in enumerate(order):
    below = sum(1 for other in strata if precedes(other, rho))
    print(f"    step {k}: {canonical_text(rho)}   ({below} strata below)")
print()

print(BAR)
print("3. mu: collapsing the (i0, j0) bubble pair to an attaching label p")
print(BAR)
top = pair_stratum(I | J, i0, j0)
domain = [rho for rho in strata if precedes(rho, top)]
target = enumerate_A1_IJ((I - {i0}) | {AUX_P}, J - {j0})
print(f"  strata strictly below {canonical_text(top)}: {len(domain)}")
for rho in sorted(domain, key=canonical_text):
    print(f"    {canonical_text(rho):<28} -> {canonical_text(mu(rho, i0, j0))}")
print(f"  target strata over (i1, p | j1): {len(target)}  (a poset isomorphism)")
print()

print(BAR)
print("4. eta: merging the puncture pair (j0, j1)")
print(BAR)
for rho in sorted(strata, key=canonical_text):
    together = {j0, j1} <= rho.principal or any(
        {j0, j1} <= b for b in rho.bubbles
    )
    if together:
        print(f"    {canonical_text(rho):<28} -> {canonical_text(eta(rho, j0, j1))}")
print()

print(BAR)
print("5. The forgetful map: dropping j1")
print(BAR)
reduced = enumerate_A1_IJ(I, J - {j1})
for rho_bar in sorted(reduced, key=canonical_text):
    fib = fiber(rho_bar, j1)
    print(f"  fiber over {canonical_text(rho_bar)}:")
    for rho in sorted(fib, key=canonical_text):
        print(f"    {canonical_text(rho)}")
sent = [rho for rho in strata if forget_stratum(rho, j1).is_sentinel]
print("  strata collapsing to the bubble-free sentinel (one per i-label):")
for rho in sorted(sent, key=canonical_text):
    print(f"    {canonical_text(rho)}")
print(f"  sentinel fiber count = {sentinel_fiber_count(I, J, j1)} = |I|")
