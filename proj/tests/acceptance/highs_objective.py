"""Solve an MPS file with HiGHS and print "<status> <objective>"."""
import sys

import highspy

h = highspy.Highs()
h.setOptionValue("output_flag", False)
h.setOptionValue("mip_rel_gap", 1e-9)
h.readModel(sys.argv[1])
h.run()
print(h.modelStatusToString(h.getModelStatus()), repr(h.getInfo().objective_function_value))
