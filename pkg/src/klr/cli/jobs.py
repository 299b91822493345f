"""Job configuration and the task runners behind each subcommand."""
from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .. import __version__
from ..cuspidal_standard import (
    ConstructionError,
    StandardFamily,
    verify_freeness,
    verify_theorem_A,
    verify_theorem_B,
)
from ..exact_linalg import LaurentSeries, format_laurent, parse_domain
from ..graded_modules import DecompositionError
from ..klr_algebra import WindowError
from ..modular import TorsionError, TriangularityError, adjustment_matrix, decomposition_matrix, torsion_reports
from ..root_data import CartanDatum, ConvexOrder, FalsificationError, kostant_partitions, minimal_pairs, root_str

SCHEMA = "klr-report/1"
TASKS = ("roots", "orders", "kp", "characters", "theorem-a", "theorem-b", "freeness", "decomp", "adjustment", "ext1")

EXIT_OK, EXIT_FALSIFIED, EXIT_REFUSED, EXIT_USAGE = 0, 1, 2, 64


class UsageError(ValueError):
    pass


class Refusal(RuntimeError):
    pass


@dataclass(frozen=True)
class JobSpec:
    cartan_type: str
    alpha: tuple = ()
    order_word: tuple | None = None
    fields: tuple = ("Q",)
    max_deg: int = 8
    ann_deg: int = 4
    primes: tuple = (2,)
    task: str = "roots"

    def validate(self) -> None:
        if self.task not in TASKS:
            raise UsageError(f"unknown task {self.task!r}; expected one of {', '.join(TASKS)}")
        if self.max_deg < 0 or self.ann_deg <= 0:
            raise UsageError("window parameters must be positive")
        try:
            datum = CartanDatum.parse(self.cartan_type)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        if self.alpha and len(self.alpha) != datum.rank:
            raise UsageError(f"alpha needs {datum.rank} coefficients")
        if any(a < 0 for a in self.alpha):
            raise UsageError("alpha must have non-negative coefficients")
        for f in self.fields:
            _domain(f)
        for p in self.primes:
            if p < 2 or any(p % k == 0 for k in range(2, int(p ** 0.5) + 1)):
                raise UsageError(f"{p} is not prime")

    def fingerprint(self) -> str:
        payload = json.dumps({"spec": asdict(self), "conventions": conventions(self), "version": __version__}, sort_keys=True)
        return hashlib.sha256(payload.encode()).hexdigest()


def _domain(label: str):
    try:
        dom = parse_domain(label)
    except ValueError as exc:
        raise UsageError(f"unknown field {label!r} (use Q or Fp)") from exc
    if dom.name == "ZZ":
        raise UsageError("coefficients must form a field")
    return dom


def conventions(spec: JobSpec) -> dict:
    datum = CartanDatum.parse(spec.cartan_type)
    order = ConvexOrder.from_word(datum, spec.order_word)
    return {
        "schema": SCHEMA,
        "sign": "Q_ij(u,v) = eps_ij u^{-c_ij} + eps_ji v^{-c_ji} with eps_ij = +1 for i < j",
        "reduced_words": "tau_w uses the lexicographically smallest reduced word of w",
        "monomial_action": "tau_w x^a acts by x^a first, then the crossings",
        "convex_order_word": list(order.word),
        "convex_order_decreasing": order.describe(),
        "shift_rule": "s(lambda) moves the head of L(lambda_1)o...oL(lambda_n) to degree 0 with bar-invariant character",
        "windows": {"max_deg": spec.max_deg, "ann_deg": spec.ann_deg},
    }


def _series(s: LaurentSeries) -> str:
    text = format_laurent(s.coeffs)
    if s.open_above and s.exact_hi != float("inf"):
        text += f" + O(q^{int(s.exact_hi) + 1})"
    return text


def _character(ch: dict) -> dict:
    return {"".join(map(str, w)): _series(s) for w, s in sorted(ch.items()) if s.coeffs or s.open_above}


class Runner:
    """Runs one job; the result is a JSON-ready dict plus optional CSV tables."""

    def __init__(self, spec: JobSpec):
        spec.validate()
        self.spec = spec
        self.datum = CartanDatum.parse(spec.cartan_type)
        self.order = ConvexOrder.from_word(self.datum, spec.order_word)
        self.tables: dict[str, str] = {}
        self._families: dict = {}

    def family(self, label: str) -> StandardFamily:
        if label not in self._families:
            self._families[label] = StandardFamily(self.datum, self.order, _domain(label), self.spec.ann_deg)
        return self._families[label]

    def alpha(self) -> tuple:
        if not self.spec.alpha:
            raise UsageError("this task needs --alpha")
        return tuple(self.spec.alpha)

    def run(self) -> tuple[dict, int]:
        handler = getattr(self, "task_" + self.spec.task.replace("-", "_"))
        try:
            body, passed = handler()
            status = EXIT_OK if passed else EXIT_FALSIFIED
            outcome = "pass" if passed else "falsified"
        except (WindowError, DecompositionError, Refusal) as exc:
            body, status, outcome = {"refusal": str(exc), "required": getattr(exc, "required", None)}, EXIT_REFUSED, "refused"
        except (FalsificationError, TriangularityError, TorsionError, ConstructionError) as exc:
            body, status, outcome = {"falsification": str(exc)}, EXIT_FALSIFIED, "falsified"
        report = {
            "conventions": conventions(self.spec),
            "job": {
                "type": self.datum.label,
                "alpha": list(self.spec.alpha),
                "task": self.spec.task,
                "fields": list(self.spec.fields),
                "primes": list(self.spec.primes),
            },
            "outcome": outcome,
            "result": body,
        }
        return report, status

    # ----------------------------------------------------------- tasks
    def task_roots(self):
        roots = self.datum.positive_roots
        return {
            "cartan_matrix": [list(r) for r in self.datum.cartan_matrix],
            "symmetrizers": [self.datum.d(i) for i in self.datum.index_set],
            "positive_roots": [{"root": root_str(b), "coefficients": list(b), "height": sum(b), "d": self.datum.d_root(b)} for b in roots],
        }, True

    def task_orders(self):
        return {"order": self.order.to_json(), "decreasing": self.order.describe(), "convex": True}, True

    def task_kp(self):
        alpha = self.alpha()
        kps = kostant_partitions(alpha, self.order)
        body = {"kostant_partitions": [lam.label() for lam in kps]}
        if self.datum.is_root(alpha):
            body["minimal_pairs"] = [
                {"beta": root_str(mp.beta), "gamma": root_str(mp.gamma), "p": mp.p} for mp in minimal_pairs(alpha, self.order)
            ]
        return body, True

    def task_characters(self):
        alpha = self.alpha()
        out = []
        for label in self.spec.fields:
            F = self.family(label)
            rows = []
            for lam in F.kps(alpha):
                P = F.standard(lam, self.spec.max_deg)
                V = P.module.truncate(self.spec.max_deg) if P.module.hi > self.spec.max_deg else P.module
                rows.append(
                    {
                        "lambda": lam.label(),
                        "s": F.shift_of(lam),
                        "L": _character(F.simple(lam).character()),
                        "Dbar": _character(F.reduced_standard(lam).character()),
                        "Delta": _character(V.character()),
                    }
                )
            out.append({"field": label, "modules": rows})
        return {"characters": out}, True

    def task_theorem_a(self):
        alpha = self.alpha()
        reports = [verify_theorem_A(self.family(f), alpha, self.spec.max_deg) for f in self.spec.fields]
        for r in reports:
            for p in r.pairs:
                if p.missing:
                    raise Refusal(f"degrees {p.missing} uncertified for {p.source} -> {p.target}")
        lines = ["field,source,target,degree,candidate_dim"]
        for f, r in zip(self.spec.fields, reports):
            for p in r.pairs:
                lines += [f"{f},{p.source},{p.target},{d},{v}" for d, v in sorted(p.dims.items())]
        self.tables["theorem_a.csv"] = "\n".join(lines) + "\n"
        return {"reports": [r.to_json() for r in reports]}, all(r.passed for r in reports)

    def task_theorem_b(self):
        alpha = self.alpha()
        reports = []
        ok = True
        window = min(self.spec.max_deg, 6)
        for f in self.spec.fields:
            F = self.family(f)
            for lam in F.kps(alpha):
                r = verify_theorem_B(F, lam, window)
                ok &= r.all_injective and r.matches
                reports.append({"field": f, **r.to_json()})
        return {"reports": reports}, ok

    def task_freeness(self):
        alpha = self.alpha()
        if not self.datum.is_root(alpha):
            raise UsageError(f"{root_str(alpha)} is not a positive root")
        reports = []
        for f in self.spec.fields:
            r = verify_freeness(self.family(f), alpha, self.spec.max_deg)
            reports.append({"field": f, "passed": r.passed, **r.to_json()})
        return {"reports": reports}, all(r["passed"] for r in reports)

    def task_decomp(self):
        alpha = self.alpha()
        mats = []
        for f in self.spec.fields:
            D = decomposition_matrix(self.family(f), alpha)
            self.tables[f"decomposition_{f}.csv"] = D.to_csv()
            mats.append(D.to_json())
        return {"matrices": mats}, True

    def task_adjustment(self):
        alpha = self.alpha()
        out = []
        for p in self.spec.primes:
            r = adjustment_matrix(alpha, p, self.family("Q"), self.family(f"F{p}"))
            self.tables[f"adjustment_F{p}.csv"] = r.A.to_csv()
            out.append(r.to_json())
        return {"adjustment": out, "verdicts": [f"p={r['p']}: {r['verdict']}" for r in out]}, True

    def task_ext1(self):
        alpha = self.alpha()
        out = []
        ok = True
        window = min(self.spec.max_deg, 6)
        for p in self.spec.primes:
            for r in torsion_reports(self.family("Q"), self.family(f"F{p}"), alpha, window):
                ok &= r.hom_vanishes
                out.append(r.to_json())
        return {"torsion": out}, ok


def render(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def run_cached(spec: JobSpec, cache_dir: Path | None) -> tuple[str, int, dict]:
    """(report text, exit status, CSV tables), reusing a cached result with the same fingerprint."""
    if cache_dir is not None:
        entry = cache_dir / f"{spec.fingerprint()}.json"
        if entry.exists():
            data = json.loads(entry.read_text())
            return data["report"], data["status"], data["tables"]
    runner = Runner(spec)
    report, status = runner.run()
    text = render(report)
    if cache_dir is not None:
        cache_dir.mkdir(parents=True, exist_ok=True)
        tmp = entry.with_suffix(".tmp")
        tmp.write_text(json.dumps({"report": text, "status": status, "tables": runner.tables}, sort_keys=True))
        tmp.replace(entry)
    return text, status, runner.tables


@dataclass
class Outputs:
    directory: Path | None
    written: list = field(default_factory=list)

    def write(self, name: str, text: str) -> None:
        if self.directory is None:
            return
        self.directory.mkdir(parents=True, exist_ok=True)
        (self.directory / name).write_text(text)
        self.written.append(name)
