from stability.tests.classify import (
    CtlFreeEndemicTest,
    DiseaseFreeTest,
    FullEndemicTest,
    VerdictAgreementTest,
)
from stability.tests.crossing import CrossingPolynomialTest, RealAxisScanTest
from stability.tests.linearization import LinearizationTest
from stability.tests.polynomials import PolyCoeffsTest
