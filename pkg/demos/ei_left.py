"""e^y E_1(y) on the right half plane from the expansion cut along the Stokes ray."""

import cmath

from dyadik import oracle, special
from dyadik.engine import plan_truncation

for y in (0.1, 1.0, 10.0, 3 + 4j):
    a = cmath.phase(-complex(y))
    plan = plan_truncation((special.ei_element(), special.EI_LEFT_BETA), (abs(y), (a, a)), 1e-10)
    res = special.ei_left(y, plan)
    err = abs(res.value - oracle.ei_left_oracle(y))
    print(f"y={str(y):>8}  value={res.value:.15f}  terms={res.terms_used:4d}  "
          f"bound={res.certified_bound:.1e}  |err|={err:.1e}")
