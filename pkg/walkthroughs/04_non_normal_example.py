"""
An infinite, non-normal example
===============================

Models are natural numbers and sentences are natural numbers too.  The
claims about this structure are checked symbolically over cofinite and
finite sets, with brute-force spot checks below a bound.
"""

from amst.counterexample import report_text, verify_counterexample

report = verify_counterexample(16)
print(report_text(report))
print("all verified:", report["verified"])
