"""Small hand-built instances that exhibit the characteristic behaviours.

* :func:`five_point_threshold` - a 0-1 valued capacity on five points under
  which four binary variables are independent and identically distributed,
  yet the blocks ``(Y1, Y2)`` and ``(Y3, Y4)`` are dependent and not
  identically distributed.
* :func:`double_swap` - two swaps on four points; two invariant capacities
  for which every invariant set has capacity 0 or 1 although the space splits
  into two invariant halves of full capacity.
* :func:`three_point_lower` - a lower probability on three points whose
  invariant sets satisfy ``v(B)=0 or v(B^c)=0`` but take the value 1/2.
"""

from __future__ import annotations

from fractions import Fraction

from .capacity import PriorSet, SampleSpace, from_priors, symmetric
from .choquet import RandomVariable
from .dynamics import MapTable
from .processes import ProcessSpec
from .specfile import SpecDocument

half = Fraction(1, 2)


def five_point_threshold() -> SpecDocument:
    space = SampleSpace.of_size(5)
    mu = symmetric(space, [0, 0, 0, 0, 1, 1])
    ys = [
        RandomVariable(space, (0, 0, 1, 1, 1)),
        RandomVariable(space, (0, 1, 1, 0, 0)),
        RandomVariable(space, (1, 1, 0, 0, 1)),
        RandomVariable(space, (0, 1, 1, 0, 1)),
    ]
    doc = SpecDocument(space, capacities={"mu": mu})
    doc.process = ProcessSpec(space, tuple(ys))
    return doc


def double_swap() -> SpecDocument:
    space = SampleSpace.of_size(4)
    mu1 = symmetric(space, [0, 0, 1, 1, 1])
    ps = PriorSet(space, ((half, half, 0, 0), (0, 0, half, half)))
    theta = MapTable(space, (1, 0, 3, 2))
    doc = SpecDocument(space, capacities={"mu1": mu1, "mu2": from_priors(ps, "upper")})
    doc.priors["mu2"] = ps
    doc.maps["theta"] = theta
    doc.rvs["xi"] = RandomVariable(space, (1, 2, 5, 7))
    return doc


def three_point_lower() -> SpecDocument:
    space = SampleSpace.of_size(3)
    ps = PriorSet(space, ((0, half, half), (half, 0, half), (half, half, 0)))
    doc = SpecDocument(space, capacities={"v": from_priors(ps, "lower")})
    doc.priors["v"] = ps
    doc.maps["theta"] = MapTable(space, (1, 0, 2))
    doc.rvs["xi"] = RandomVariable(space, (1, 2, 4))
    return doc
