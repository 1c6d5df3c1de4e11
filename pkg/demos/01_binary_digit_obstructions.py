"""Binary-digit obstructions for maps on products of spheres.

Whether every biskew map S^m x S^n -> R^{m+n} must hit zero is decided
by the binary expansions of m and n: if they share no one-digit, zero is
forced.  A True verdict is a certificate of obstruction; False only
means this criterion is silent.
"""

from coupledemb import ActionSignature, biskew_blocked, shares_binary_one, zero_guaranteed

print(__doc__)

print("m\\n |", " ".join(f"{n:>2}" for n in range(1, 11)))
for m in range(1, 11):
    row = " ".join(" X" if biskew_blocked(m, n) else " ." for n in range(1, 11))
    print(f"{m:>3} | {row}")
print("\nX = every biskew map S^m x S^n -> R^{m+n} hits zero")

print("\nClassic small cases:")
print("  (m,n)=(1,2): shares one?", shares_binary_one(1, 2),
      "-> no coupled Z/2-embedding S^1 x S^2 -> R^3")
print("  (m,n)=(1,1): shares one?", shares_binary_one(1, 1),
      "-> the criterion is silent (complex multiplication exists)")

print("\nSigned refinement (action signature (i, j, k)):")
sig = ActionSignature(2, 2, 6)
print("  spheres S^4 x S^6 into signature (2,2,6):",
      zero_guaranteed(4, 6, sig))
sig = ActionSignature(0, 0, 3)
print("  reduces to the plain criterion for (i,j)=(0,0):",
      zero_guaranteed(1, 2, sig), "==", biskew_blocked(1, 2))
