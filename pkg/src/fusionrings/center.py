"""Categorification obstructions from induction to the Drinfeld center.

Everything here works at the level of multiplicity data: the forgetful
image of the induced object I(x) is computable from the fusion tensor
alone, adjunction pins how candidate center summands are shared between
the I(x), and trace conditions on twists (roots of unity attached to
center summands) either admit a solution shape or produce an exact
contradiction.  The pipeline therefore certifies a ring as "pass"
(no obstruction found, with a consistent center profile) or
"obstructed" (every decomposition branch ends in an impossible twist
equation), with "undecided" reserved for inputs outside the exact or
commutative regime.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .codegrees import CodegreeSpectrum, formal_codegrees
from .exactnum import MixedRadicand, QuadNum, real_sort_key
from .rings import FusionRing, FPDimVector, basis_vector, fpdim, tensor_expand

ASSUMPTIONS = (
    "commutative Grothendieck ring",
    "spherical, pseudo-unitary trace convention (coefficients are FP dimensions)",
    "twists of center summands are roots of unity",
    "induced unit object is multiplicity-free",
)

BRANCH_CAP = 100_000


class NonUnitEntry(ValueError):
    """No unit summand dimension equals 1; the ring data is inconsistent."""


class NoSolution(ValueError):
    """No forgetful-image assignment exists for the induced unit object."""


class PipelineInexact(ValueError):
    """Exactness fallback triggered somewhere the pipeline needs exact data."""


@dataclass(frozen=True)
class InductionProfile:
    """Multiplicities of basis elements in the forgetful images F(I(x)).

    FI[x][t] counts t inside the sum of all T * x * dual(T); by adjunction
    the same matrix is the Gram matrix of Hom spaces between the induced
    objects, so it must come out symmetric.
    """

    FI: np.ndarray

    @property
    def H(self) -> np.ndarray:
        return self.FI


def induction_profile(ring: FusionRing) -> InductionProfile:
    rank = ring.rank
    fi = np.zeros((rank, rank), dtype=np.int64)
    for x in range(rank):
        for t in range(rank):
            vec = tensor_expand(ring, basis_vector(rank, t), x)
            vec = tensor_expand(ring, vec, ring.dual[t])
            fi[x] += vec
    if not np.array_equal(fi, fi.T):
        raise ArithmeticError("induction Gram matrix is not symmetric")
    fi.setflags(write=False)
    return InductionProfile(FI=fi)


def unit_summand_dims(ring: FusionRing, spectrum: CodegreeSpectrum) -> list[QuadNum]:
    """Dimensions of the simple summands of the induced unit, largest first.

    Each codegree f contributes one summand of dimension FPdim(ring)/f;
    the Perron codegree contributes the unit itself (dimension 1).
    """
    if not spectrum.exact:
        raise PipelineInexact("codegree spectrum is not exact")
    fp = fpdim(ring)
    if not fp.exact:
        raise PipelineInexact("dimension vector is not exact")
    total = fp.total
    dims = [total / f for f in spectrum.as_list()]
    if not any(isinstance(d, QuadNum) and d == 1 for d in dims):
        raise NonUnitEntry("no induced-unit summand of dimension 1")
    dims.sort(key=real_sort_key, reverse=True)
    return dims


@dataclass(frozen=True)
class CenterSummand:
    """A constraint-consistent placeholder for a simple center object.

    Center simples are only ever known here through their forgetful image
    and the dimension it forces; ids are generated labels, not names of
    actual objects.
    """

    sid: str
    image: tuple[int, ...]
    fdim: QuadNum

    @property
    def appears_in(self) -> dict[int, int]:
        return {x: int(m) for x, m in enumerate(self.image) if m}

    def describe(self, ring: FusionRing) -> str:
        parts = []
        for t, m in enumerate(self.image):
            if m:
                parts.append(ring.names[t] if m == 1 else f"{m}*{ring.names[t]}")
        return f"{self.sid}: F={' + '.join(parts) or '0'}, dim={self.fdim}"


def solve_forgetful_images(
    ring: FusionRing, profile: InductionProfile, dims: list[QuadNum]
) -> list[tuple[CenterSummand, ...]]:
    """All assignments of forgetful images to the induced-unit summands.

    Every image contains the unit exactly once, has the prescribed
    dimension, and the images add up to F(I(1)).  Multiple consistent
    assignments branch; none raises NoSolution.
    """
    fp = fpdim(ring)
    fi0 = [int(v) for v in profile.FI[0]]
    rank = ring.rank

    def candidates(target_dim):
        out = []
        ranges = [range(fi0[t] + 1) for t in range(1, rank)]
        for tail in itertools.product(*ranges):
            w = (1,) + tail
            if fp.dim_of(w) == target_dim:
                out.append(w)
        return out

    groups: list[tuple[QuadNum, int]] = []
    for d in dims:
        if groups and groups[-1][0] == d:
            groups[-1] = (d, groups[-1][1] + 1)
        else:
            groups.append((d, 1))

    group_choices = []
    for d, count in groups:
        cand = candidates(d)
        group_choices.append(
            list(itertools.combinations_with_replacement(cand, count))
        )

    assignments = []
    for combo in itertools.product(*group_choices):
        images = [w for pick in combo for w in pick]
        sums = [sum(w[t] for w in images) for t in range(rank)]
        if sums != fi0:
            continue
        ordered = sorted(
            images, key=lambda w: (real_sort_key(fp.dim_of(w)), w), reverse=True
        )
        unit_pos = next(i for i, w in enumerate(ordered) if fp.dim_of(w) == 1)
        unit_image = ordered.pop(unit_pos)
        summands = [CenterSummand("1", unit_image, QuadNum(1))]
        for k, w in enumerate(ordered, 1):
            summands.append(CenterSummand(f"u{k}", w, fp.dim_of(w)))
        assignments.append(tuple(summands))
    if not assignments:
        raise NoSolution("the induced unit object admits no image assignment")
    return assignments


# ---------------------------------------------------------------------------
# twist equations


@dataclass(frozen=True)
class TwistEquation:
    """known + sum of coeff * theta(var) = target, with each theta on the
    unit circle (a root of unity in the intended interpretation)."""

    terms: tuple  # ((coeff: QuadNum, sid: str), ...)
    known: QuadNum
    target: QuadNum

    def render(self) -> str:
        parts = []
        if self.known != 0 or not self.terms:
            parts.append(str(self.known))
        for idx, (coeff, _sid) in enumerate(self.terms, 1):
            var = f"t{idx}"
            if coeff == 1:
                parts.append(var)
            else:
                cs = str(coeff)
                if "+" in cs or "-" in cs.lstrip("-") or cs.startswith("-") or "/" in cs:
                    cs = f"({cs})"
                parts.append(f"{cs}*{var}")
        return " + ".join(parts) + f" = {self.target}"


@dataclass(frozen=True)
class TwistOutcome:
    verdict: str  # "feasible" | "infeasible" | "unknown"
    forced: dict = field(default_factory=dict)  # sid -> +1 / -1
    witness: str | None = None


def twist_feasible(eq: TwistEquation) -> TwistOutcome:
    """Decide the twist equation over unit-modulus scalars.

    Rules, in order: saturation forces every variable to one sign; the
    triangle bound refutes residuals beyond the coefficient sum; a single
    variable is solved outright and must land on +-1; and when one
    coefficient dominates the rest the reachable band excludes small
    residuals.  Residuals strictly inside the reachable band are feasible
    by a conjugate-pair assignment and force nothing.
    """
    try:
        residual = eq.target - eq.known
        if not eq.terms:
            if residual == 0:
                return TwistOutcome("feasible")
            return TwistOutcome(
                "infeasible", witness=f"no variables remain but residual is {residual}"
            )
        coeffs = [c for c, _ in eq.terms]
        total = QuadNum(0)
        for c in coeffs:
            if c.sign() <= 0:
                raise ValueError("twist coefficients must be positive")
            total = total + c
        mag = abs(residual)
        if mag > total:
            return TwistOutcome(
                "infeasible",
                witness=f"|{residual}| exceeds the coefficient sum {total}",
            )
        sgn = 1 if residual.sign() >= 0 else -1
        if mag == total:
            forced = {sid: sgn for _, sid in eq.terms}
            return TwistOutcome("feasible", forced=forced)
        if len(eq.terms) == 1:
            coeff, sid = eq.terms[0]
            theta = residual / coeff
            if theta == 1 or theta == -1:
                return TwistOutcome("feasible", forced={sid: 1 if theta == 1 else -1})
            return TwistOutcome(
                "infeasible",
                witness=f"forced twist {theta} is not a root of unity",
            )
        cmax = coeffs[0]
        for c in coeffs[1:]:
            if c > cmax:
                cmax = c
        inner = cmax + cmax - total
        if inner.sign() > 0:
            if mag < inner:
                return TwistOutcome(
                    "infeasible",
                    witness=(
                        f"dominant coefficient {cmax} keeps |sum| >= {inner} > |{residual}|"
                    ),
                )
            if mag == inner:
                forced = {}
                for c, sid in eq.terms:
                    forced[sid] = sgn if c == cmax else -sgn
                return TwistOutcome("feasible", forced=forced)
        return TwistOutcome("feasible")
    except MixedRadicand as exc:
        return TwistOutcome("unknown", witness=f"mixed radicands: {exc}")


# ---------------------------------------------------------------------------
# branch enumeration


@dataclass(frozen=True)
class StepRecord:
    x: int
    decomposition: tuple  # ((sid, multiplicity), ...) for I(x)
    new_summands: tuple[CenterSummand, ...]
    equation: TwistEquation | None
    outcome: TwistOutcome | None

    def describe(self, ring: FusionRing) -> str:
        label = ring.names[self.x]
        body = " + ".join(
            sid if m == 1 else f"{m}*{sid}" for sid, m in self.decomposition
        )
        return f"I({label}) = {body}"


@dataclass(frozen=True)
class BranchRecord:
    steps: tuple[StepRecord, ...]
    status: str  # "pass" | "infeasible" | "unknown" | "open"
    witness: str | None
    summands: tuple[CenterSummand, ...]


def _square_partitions(q: int) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []

    def rec(rem, cap, acc):
        if rem == 0:
            out.append(tuple(acc))
            return
        m = min(cap, math.isqrt(rem))
        while m >= 1:
            acc.append(m)
            rec(rem - m * m, m, acc)
            acc.pop()
            m -= 1

    rec(q, q, [])
    return out


def _new_summand_options(rvec, x: int, rank: int):
    """Multisets of (multiplicity, image) pairs for summands first seen at I(x).

    Every new summand appears in I(x) with multiplicity equal to its
    image's coefficient there, so images are supported on coordinates not
    yet processed and carry m at coordinate x.  Options come out in a
    deterministic, lexicographically descending order.
    """
    others = list(range(x + 1, rank))
    q = int(rvec[x])
    residual = [int(rvec[c]) for c in others]
    if q == 0:
        return [()] if not any(residual) else []
    options = []
    for ms in _square_partitions(q):
        slots: list[tuple[int, tuple[int, ...]]] = []

        def rec(j, remaining):
            if j == len(ms):
                if not any(remaining):
                    option = []
                    for m, tail in slots:
                        w = [0] * rank
                        w[x] = m
                        for c, t in zip(others, tail):
                            w[c] = t
                        option.append((m, tuple(w)))
                    options.append(tuple(option))
                return
            m = ms[j]
            ranges = [range(rem // m, -1, -1) for rem in remaining]
            for tail in itertools.product(*ranges):
                if j and ms[j - 1] == m and tail > slots[j - 1][1]:
                    continue
                slots.append((m, tail))
                rec(j + 1, [rem - m * t for rem, t in zip(remaining, tail)])
                slots.pop()

        rec(0, residual)
    return options


def _branch_tree(
    ring: FusionRing,
    fp: FPDimVector,
    profile: InductionProfile,
    unit_assignment: tuple[CenterSummand, ...],
    with_twist: bool,
):
    """Depth-first expansion of center decompositions for one unit solution."""
    rank = ring.rank
    records: list[BranchRecord] = []

    unit_eq = TwistEquation(
        terms=tuple((s.fdim, s.sid) for s in unit_assignment if s.sid != "1"),
        known=QuadNum(1),
        target=fp.total,
    )
    unit_outcome = twist_feasible(unit_eq) if with_twist else None
    theta0 = {"1": 1}
    unit_step = StepRecord(
        x=0,
        decomposition=tuple((s.sid, 1) for s in unit_assignment),
        new_summands=unit_assignment,
        equation=unit_eq,
        outcome=unit_outcome,
    )
    if with_twist and unit_outcome.verdict == "infeasible":
        return [
            BranchRecord(
                steps=(unit_step,),
                status="infeasible",
                witness=unit_outcome.witness,
                summands=unit_assignment,
            )
        ]
    if with_twist:
        theta0.update(unit_outcome.forced)

    def rec(x, summands, theta, steps, any_unknown):
        if len(records) > BRANCH_CAP:
            raise PipelineInexact("branch enumeration exceeded the safety cap")
        if x == rank:
            if not with_twist:
                status = "open"
            else:
                status = "unknown" if any_unknown else "pass"
            records.append(
                BranchRecord(
                    steps=tuple(steps),
                    status=status,
                    witness=None,
                    summands=tuple(summands),
                )
            )
            return
        fi_x = profile.FI[x]
        rvec = np.array(fi_x, dtype=np.int64)
        for s in summands:
            if s.image[x]:
                rvec -= s.image[x] * np.array(s.image, dtype=np.int64)
        dead = None
        if (rvec < 0).any():
            dead = "known summand multiplicities overshoot F(I(x))"
        elif any(rvec[c] != 0 for c in range(x)):
            dead = "residual image touches an already decomposed coordinate"
        options = [] if dead else _new_summand_options(rvec, x, rank)
        if dead or not options:
            records.append(
                BranchRecord(
                    steps=tuple(steps),
                    status="infeasible",
                    witness=(
                        f"no consistent decomposition of I({ring.names[x]})"
                        + (f": {dead}" if dead else "")
                    ),
                    summands=tuple(summands),
                )
            )
            return
        for option in options:
            new = []
            for k, (m, w) in enumerate(option, 1):
                new.append(
                    CenterSummand(
                        sid=f"{ring.names[x]}:{k}", image=w, fdim=fp.dim_of(w)
                    )
                )
            all_summands = list(summands) + new
            decomposition = tuple(
                (s.sid, int(s.image[x])) for s in all_summands if s.image[x]
            )
            eq_terms = []
            known = QuadNum(0)
            for s in all_summands:
                m = int(s.image[x])
                if not m:
                    continue
                coeff = s.fdim * m
                if s.sid in theta:
                    known = known + coeff * theta[s.sid]
                else:
                    eq_terms.append((coeff, s.sid))
            equation = TwistEquation(
                terms=tuple(eq_terms), known=known, target=QuadNum(0)
            )
            outcome = twist_feasible(equation) if with_twist else None
            step = StepRecord(
                x=x,
                decomposition=decomposition,
                new_summands=tuple(new),
                equation=equation,
                outcome=outcome,
            )
            if with_twist and outcome.verdict == "infeasible":
                records.append(
                    BranchRecord(
                        steps=tuple(steps) + (step,),
                        status="infeasible",
                        witness=outcome.witness,
                        summands=tuple(all_summands),
                    )
                )
                continue
            new_theta = dict(theta)
            unknown = any_unknown
            if with_twist:
                new_theta.update(outcome.forced)
                unknown = unknown or outcome.verdict == "unknown"
            rec(x + 1, all_summands, new_theta, steps + [step], unknown)

    rec(1, list(unit_assignment), theta0, [unit_step], False)
    return records


def decomposition_branches(
    ring: FusionRing, profile: InductionProfile, unit_solution
) -> list[BranchRecord]:
    """Every complete multiplicity-consistent decomposition of all the I(x).

    Twist equations are attached to each step but not used to prune, so
    the result is the full combinatorial branch set for one assignment of
    the induced-unit images.
    """
    fp = fpdim(ring)
    return _branch_tree(ring, fp, profile, unit_solution, with_twist=False)


@dataclass(frozen=True)
class ObstructionReport:
    ring_name: str
    verdict: str  # "pass" | "obstructed" | "undecided"
    branches: tuple[BranchRecord, ...]
    center_dims: tuple | None  # ((dim, multiplicity), ...) for a passing branch
    dim_square_total: QuadNum | None
    fp_total: object
    spectrum: CodegreeSpectrum | None
    profile: InductionProfile | None
    assumptions: tuple[str, ...]
    diagnostics: tuple[str, ...] = ()

    @property
    def passing_branch(self) -> BranchRecord | None:
        for b in self.branches:
            if b.status == "pass":
                return b
        return None


def obstruct(ring: FusionRing) -> ObstructionReport:
    """Run the full center pipeline and report pass / obstructed / undecided.

    pass: some branch satisfies every twist equation; its center profile
    and squared-dimension total (equal to FPdim^2) are reported.
    obstructed: every branch ends in an exact contradiction, and each one
    carries its witness.  undecided: the ring is outside the exact
    commutative regime or some equation fell to the unknown verdict.
    """
    ring.validate()

    def undecided(reason, spectrum=None, profile=None):
        return ObstructionReport(
            ring_name=ring.name or "?",
            verdict="undecided",
            branches=(),
            center_dims=None,
            dim_square_total=None,
            fp_total=None,
            spectrum=spectrum,
            profile=profile,
            assumptions=ASSUMPTIONS,
            diagnostics=(reason,),
        )

    if not np.array_equal(ring.N, ring.N.transpose(1, 0, 2)):
        return undecided("ring is noncommutative; unit-summand dimensions need distinct characters")
    fp = fpdim(ring)
    if not fp.exact:
        return undecided("dimension vector required an interval fallback")
    spectrum = formal_codegrees(ring)
    if not spectrum.exact:
        return undecided("codegree spectrum required an interval fallback", spectrum)
    profile = induction_profile(ring)
    if int(profile.H[0][0]) != ring.rank:
        return undecided(
            "induced unit is not multiplicity-free", spectrum, profile
        )
    try:
        dims = unit_summand_dims(ring, spectrum)
        unit_assignments = solve_forgetful_images(ring, profile, dims)
    except NoSolution as exc:
        return ObstructionReport(
            ring_name=ring.name or "?",
            verdict="obstructed",
            branches=(
                BranchRecord(steps=(), status="infeasible", witness=str(exc), summands=()),
            ),
            center_dims=None,
            dim_square_total=None,
            fp_total=fp.total,
            spectrum=spectrum,
            profile=profile,
            assumptions=ASSUMPTIONS,
        )
    except PipelineInexact as exc:
        return undecided(str(exc), spectrum, profile)

    branches: list[BranchRecord] = []
    try:
        for assignment in unit_assignments:
            branches.extend(_branch_tree(ring, fp, profile, assignment, with_twist=True))
    except PipelineInexact as exc:
        return undecided(str(exc), spectrum, profile)

    passing = next((b for b in branches if b.status == "pass"), None)
    center_dims = None
    dim_square_total = None
    if passing is not None:
        verdict = "pass"
        dims_list = sorted(
            (s.fdim for s in passing.summands), key=real_sort_key, reverse=True
        )
        grouped: list[list] = []
        for d in dims_list:
            if grouped and grouped[-1][0] == d:
                grouped[-1][1] += 1
            else:
                grouped.append([d, 1])
        center_dims = tuple((d, m) for d, m in grouped)
        acc = QuadNum(0)
        for s in passing.summands:
            acc = acc + s.fdim * s.fdim
        dim_square_total = acc
        if acc != fp.total * fp.total:
            raise ArithmeticError(
                f"passing branch dimension check failed: {acc} != {fp.total * fp.total}"
            )
    elif any(b.status == "unknown" for b in branches):
        verdict = "undecided"
    else:
        verdict = "obstructed"

    return ObstructionReport(
        ring_name=ring.name or "?",
        verdict=verdict,
        branches=tuple(branches),
        center_dims=center_dims,
        dim_square_total=dim_square_total,
        fp_total=fp.total,
        spectrum=spectrum,
        profile=profile,
        assumptions=ASSUMPTIONS,
    )
