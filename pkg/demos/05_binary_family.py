"""
A separated family of pseudometrics
===================================

Each bit string of length k gives a pseudometric on k + 1 points; any two
different bit strings give members exactly 1 apart.
"""
import itertools

from finmetric import all_selectors, family_member, family_separation, sup_distance

print(family_member("0110").entries)

for k in range(1, 8):
    print(f"k={k}: {2**k} members, separation {family_separation(all_selectors(k))}")

a, b = "0110100111", "0110100110"
print("members differing in one bit:", sup_distance(family_member(a), family_member(b)))
print("duplicates:", family_separation([a, a]))
print("pairs checked for k=4:", sum(1 for _ in itertools.combinations(all_selectors(4), 2)))
