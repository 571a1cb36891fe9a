"""Randomized property sweeps over the bound and identity checks.

Each sweep draws instances from a seeded generator (Python's Mersenne
Twister via ``random.Random``, so identical seeds reproduce identical trials
on every platform), checks the property exactly, and reports any falsifying
instance as a serialisable dict that can be replayed verbatim.  The
properties are theorems, so failures indicate implementation bugs; the whole
point of the sweeps is falsification power over the code.

Sweep kinds:

* ``theorem1`` -- |S_P(x)| <= 1 as an exact rational comparison for random
  finite and cofinite prime sets;
* ``mock``     -- the three restricted sums stay within the unit bound, and
  the coprime form agrees exactly with its semigroup formulation;
* ``zorn``     -- the integer counting identity holds exactly;
* ``weights``  -- random rational weights stay within the unit bound and 0/1
  weights reproduce the plain partial sums exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import UsageError
from .primes import (
    AllPrimes,
    CofinitePrimes,
    FinitePrimes,
    IntervalPrimes,
    LogFracPrimes,
    ResiduePrimes,
    parse_spec,
    render_spec,
)
from .sums import (
    WeightFunction,
    partial_sum,
    partial_sum_coprime,
    partial_sum_divisors,
    partial_sum_shifted,
    spec_of_coprime_modulus,
    weighted_partial_sum,
    zorn_check,
)

SWEEP_KINDS = ("theorem1", "mock", "zorn", "weights")

_PRIMES_TO_100 = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
                  59, 61, 67, 71, 73, 79, 83, 89, 97)
_MAX_X = 10**4


@dataclass
class SweepResult:
    kind: str
    trials: int
    seed: int | None
    passed: int
    failures: list[dict] = field(default_factory=list)
    instances: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _random_finite_spec(rng: random.Random) -> FinitePrimes:
    size = rng.randrange(0, 9)
    return FinitePrimes(tuple(rng.sample(_PRIMES_TO_100, size)))


def _random_cofinite_spec(rng: random.Random) -> CofinitePrimes:
    size = rng.randrange(0, 6)
    return CofinitePrimes(tuple(rng.sample(_PRIMES_TO_100, size)))


def _random_zorn_spec(rng: random.Random):
    roll = rng.random()
    if roll < 0.35:
        return _random_finite_spec(rng)
    if roll < 0.60:
        return _random_cofinite_spec(rng)
    if roll < 0.70:
        return AllPrimes()
    if roll < 0.80:
        lo = rng.uniform(0, 150)
        return IntervalPrimes(lo, lo + rng.uniform(1, 400))
    if roll < 0.95:
        m = rng.randrange(2, 30)
        return ResiduePrimes(rng.randrange(0, m), m)
    return LogFracPrimes(rng.uniform(0.5, 3.0), rng.uniform(0.05, 0.5), rng.random())


def generate_instance(kind: str, rng: random.Random) -> dict:
    if kind == "theorem1":
        if rng.random() < 5 / 6:
            spec = _random_finite_spec(rng)
        else:
            spec = _random_cofinite_spec(rng)
        return {"kind": kind, "set": render_spec(spec), "x": rng.randrange(1, _MAX_X + 1)}
    if kind == "zorn":
        spec = _random_zorn_spec(rng)
        return {"kind": kind, "set": render_spec(spec), "x": rng.randrange(1, _MAX_X + 1)}
    if kind == "mock":
        op = rng.choice(("coprime", "divisors", "shifted"))
        inst = {"kind": kind, "op": op, "x": rng.randrange(1, _MAX_X + 1)}
        if op == "coprime":
            inst["P"] = rng.randrange(1, _MAX_X + 1)
        elif op == "divisors":
            inst["N"] = rng.randrange(1, _MAX_X + 1)
        else:
            inst["m"] = 1 if rng.random() < 0.1 else rng.randrange(1, 201)
        return inst
    if kind == "weights":
        default = rng.randrange(2)
        extreme = rng.random() < 0.25
        weights = {}
        for p in rng.sample(_PRIMES_TO_100[:15], rng.randrange(0, 7)):
            if extreme:
                value = Fraction(rng.randrange(2))
            else:
                den = rng.randrange(1, 13)
                value = Fraction(rng.randrange(0, den + 1), den)
            weights[str(p)] = str(value)
        return {
            "kind": kind,
            "default": default,
            "weights": weights,
            "x": rng.randrange(1, _MAX_X + 1),
        }
    raise UsageError(f"unknown sweep kind {kind!r} (expected one of {', '.join(SWEEP_KINDS)})")


def check_instance(instance: dict) -> dict | None:
    """Run one serialized instance; returns a failure record or None."""
    kind = instance["kind"]
    if kind == "theorem1":
        report = partial_sum(parse_spec(instance["set"]), instance["x"], mode="exact")
        if not report.bound_ok:
            return {**instance, "reason": "partial sum escaped the unit bound"}
        return None
    if kind == "zorn":
        result = zorn_check(parse_spec(instance["set"]), instance["x"])
        if not result.equal:
            return {
                **instance,
                "reason": f"counting identity split: lhs={result.lhs} rhs={result.rhs}",
            }
        return None
    if kind == "mock":
        x = instance["x"]
        op = instance["op"]
        if op == "coprime":
            report = partial_sum_coprime(instance["P"], x, mode="exact")
            twin = partial_sum(spec_of_coprime_modulus(instance["P"]), x, mode="exact")
            if report.value_exact != twin.value_exact:
                return {**instance, "reason": "coprime sum disagrees with its semigroup form"}
        elif op == "divisors":
            report = partial_sum_divisors(instance["N"], x, mode="exact")
        else:
            report = partial_sum_shifted(instance["m"], x, mode="exact")
            if instance["m"] == 1:
                twin = partial_sum(AllPrimes(), x, mode="exact")
                if report.value_exact != twin.value_exact:
                    return {**instance, "reason": "shift m=1 disagrees with the plain sum"}
        if not report.bound_ok:
            return {**instance, "reason": f"{op} sum escaped the unit bound"}
        return None
    if kind == "weights":
        assignments = {int(p): Fraction(v) for p, v in instance["weights"].items()}
        a = WeightFunction(assignments, default_value=instance["default"])
        report = weighted_partial_sum(a, instance["x"], mode="exact")
        if not report.bound_ok:
            return {**instance, "reason": "weighted sum escaped the unit bound"}
        if all(v in (0, 1) for v in assignments.values()):
            if instance["default"] == 0:
                spec = FinitePrimes(tuple(p for p, v in assignments.items() if v == 1))
            else:
                spec = CofinitePrimes(tuple(p for p, v in assignments.items() if v == 0))
            twin = partial_sum(spec, instance["x"], mode="exact")
            if report.value_exact != twin.value_exact:
                return {**instance, "reason": "extreme weights disagree with the plain sum"}
        return None
    raise UsageError(f"unknown sweep kind {kind!r}")


def run_sweep(kind: str, trials: int, seed: int) -> SweepResult:
    """Generate and check ``trials`` random instances of the given kind."""
    if kind not in SWEEP_KINDS:
        raise UsageError(f"unknown sweep kind {kind!r} (expected one of {', '.join(SWEEP_KINDS)})")
    if trials < 1:
        raise UsageError(f"trials must be >= 1, got {trials}")
    rng = random.Random(seed)
    result = SweepResult(kind=kind, trials=trials, seed=seed, passed=0)
    for _ in range(trials):
        instance = generate_instance(kind, rng)
        result.instances.append(instance)
        failure = check_instance(instance)
        if failure is None:
            result.passed += 1
        else:
            result.failures.append(failure)
    return result


def replay_instances(instances: list[dict]) -> SweepResult:
    """Re-check previously serialized instances; verdicts are deterministic,
    so a replay reproduces the original outcome exactly."""
    result = SweepResult(kind="replay", trials=len(instances), seed=None, passed=0)
    for instance in instances:
        result.instances.append(instance)
        failure = check_instance(instance)
        if failure is None:
            result.passed += 1
        else:
            result.failures.append(failure)
    return result
