"""
Integral identities behind the normalization
============================================

Print every numeric-vs-closed-form check, the same table ``qwalk2d verify`` shows.
"""

from qwalk2d import appendix
from qwalk2d.verification import format_report, run_verification

print(format_report(run_verification()))

# a single contour integral, looked at directly
num, closed = appendix.contour_J_check(0.5, 0.3)
print("\nJ(0.5) at p=0.3:", num, closed)
