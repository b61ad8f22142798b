"""
More than two levels
====================

A three-level ladder with a Lindblad pair on each coupled transition.  Does
every basis state still relax to the same final state?
"""
import numpy as np

from lindblad_atom import check_conjecture, ladder_model

np.set_printoptions(precision=4, suppress=True)

for family in ("pairs", "collective"):
    m = ladder_model([0.0, 1.0, 2.3], [0.4 + 0.1j, 0.25 - 0.3j], [0.3, 0.5], [0.1, 0.2], family)
    rep = check_conjecture(m)
    print(f"{family}: pattern {rep.pattern_pass} ({rep.max_pattern_violation:.1e}), "
          f"equal final states {rep.equal_final_states_pass} ({rep.max_state_discrepancy:.1e})")
    print(rep.final_state)
