"""
Checking the threshold claims end to end
========================================

For a formula on n variables, both reduction graphs have (power)
domination number n exactly when the formula is satisfiable and more
than n otherwise.
"""

from planedom.workbench import BatchParams, batch_verify, run_dom_pipeline, run_pdom_pipeline, u3, u3_minus

for inst in (u3(), u3_minus()):
    for run in (run_dom_pipeline, run_pdom_pipeline):
        res = run(inst)
        print("\n".join(res.lines()))
        print()

# a seeded batch; the digest changes if any verdict or witness changes
summary = batch_verify(BatchParams(max_n=4, max_m=5), seed=1, count=50)
print(summary.text())
