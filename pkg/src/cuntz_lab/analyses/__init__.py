from cuntz_lab.analyses import compare
from cuntz_lab.analyses import ell
from cuntz_lab.analyses import grid
from cuntz_lab.analyses import intertwine
from cuntz_lab.analyses import kit_test
from cuntz_lab.analyses import rc_bound
from cuntz_lab.analyses import sdg_check
from cuntz_lab.analyses import semigroup
from cuntz_lab.analyses import villadsen_stages

# One analysis per command, in the order the commands are documented.
all_analyses = [
    compare.CompareAnalysis,
    rc_bound.RcBoundAnalysis,
    sdg_check.SlowDimensionGrowthAnalysis,
    villadsen_stages.VilladsenAnalysis,
    intertwine.IntertwineAnalysis,
    semigroup.SemigroupAnalysis,
    ell.EllAnalysis,
    kit_test.KitTestAnalysis,
    grid.GridAnalysis,
]
