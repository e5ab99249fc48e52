from maffkit.verify.oracle import OracleSuite
from maffkit.verify.kaufman import KaufmanSuite
from maffkit.verify.douglas import DouglasSuite
from maffkit.verify.lattice import LatticeSuite
from maffkit.verify.uniqueness import UniquenessSuite
from maffkit.verify.functor import FunctorSuite
from maffkit.verify.numrange import NumericalRangeSuite
from maffkit.verify.krein import KreinSuite
from maffkit.verify.mvn import MvnSuite


def get_suites():
    return [
        OracleSuite(),
        KaufmanSuite(),
        DouglasSuite(),
        LatticeSuite(),
        UniquenessSuite(),
        FunctorSuite(),
        NumericalRangeSuite(),
        KreinSuite(),
        MvnSuite(),
    ]


def suite_names():
    return [s.name for s in get_suites()]
