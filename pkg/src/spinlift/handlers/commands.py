"""
Command handlers for the batch CLI.

Each handler loads its input document, runs the computation and returns
``(exit_code, report)``. Validation failures are reported with exit code 2
and an itemized ``errors`` list; failed randomized checks use exit code 1.
Schema, parse and bound errors propagate to the caller.
"""

import random
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Tuple

from twisted.python import log

from spinlift.clifford import (
    decomposition_independent,
    pin_extension,
    sw1,
    sw2,
    whitney_check,
)
from spinlift.cohomology import (
    are_equivalent,
    classes_equal,
    cocycle_from_extension,
    extension_from_cocycle,
    find_splitting,
    h2,
    identify_group,
)
from spinlift.cohomology.instances import run_crossed_hom_trials, run_key_lemma_trials
from spinlift.config import DEFAULT_BOUNDS, Bounds
from spinlift.errors import SchemaError, SizeBoundExceeded, UsageError
from spinlift.rootdata import RootDatum, WeightMultiset, fundamental_group, validate
from spinlift.selftest import run_selftest
from spinlift.spin import gauge_flip_test, involution, spin_report
from spinlift.storage import schema

Result = Tuple[int, Dict[str, Any]]

DEFAULT_MAX_ORDER = 32
DEFAULT_TRIALS = {"keylemma": 50, "crossedhom": 20, "spin": 0}
INPUT_COMMANDS = ("pi1", "spin", "involution", "h2", "extension", "sw")


def _invalid(errors) -> Result:
    return 2, {"valid": False, "errors": list(errors)}


class CommandHandler:
    """
    Dispatches CLI commands to the computation modules.
    """

    def __init__(self, bounds: Bounds = DEFAULT_BOUNDS, seed: int = 0,
                 trials: Optional[int] = None, max_order: Optional[int] = None,
                 debug: bool = False):
        """
        Initialize command handler.

        Args:
            bounds: Size bounds for every computation
            seed: Seed for randomized checks
            trials: Number of randomized trials (command default when None)
            max_order: Largest |G x| W| for random lemma instances
            debug: Enable debug logging
        """
        self.bounds = bounds
        self.seed = seed
        self.trials = trials
        self.max_order = DEFAULT_MAX_ORDER if max_order is None else max_order
        self.debug = debug

    @property
    def handlers(self) -> Dict[str, Callable[..., Result]]:
        return {
            "pi1": self.handle_pi1,
            "spin": self.handle_spin,
            "involution": self.handle_involution,
            "h2": self.handle_h2,
            "extension": self.handle_extension,
            "keylemma": self.handle_keylemma,
            "crossedhom": self.handle_crossedhom,
            "sw": self.handle_sw,
            "selftest": self.handle_selftest,
        }

    def handle(self, command: str, input_path: Optional[Path] = None) -> Result:
        """
        Run one command.

        Args:
            command: Command name
            input_path: Input document, required by the commands in INPUT_COMMANDS

        Returns:
            tuple: (exit_code: int, report: dict)
        """
        if command not in self.handlers:
            raise UsageError(f"Unknown command {command!r}")
        if command in INPUT_COMMANDS:
            if input_path is None:
                raise UsageError(f"Command {command} requires --input")
            if self.debug:
                log.msg(f"Running {command} on {input_path}")
            return self.handlers[command](input_path)
        if self.debug:
            log.msg(f"Running {command} with seed {self.seed}")
        return self.handlers[command]()

    def _trials(self, command: str) -> int:
        return DEFAULT_TRIALS[command] if self.trials is None else self.trials

    def _load_weights(self, path: Path) -> Tuple[Optional[WeightMultiset], Result]:
        m = schema.load(path, schema.weights_from_json)
        failures = list(validate(m.datum).failures)
        failures.extend(m.validate(bounds=self.bounds).failures)
        if failures:
            return None, _invalid(failures)
        return m, (0, {})

    def handle_pi1(self, path: Path) -> Result:
        datum: RootDatum = schema.load(path, schema.datum_from_json)
        report = validate(datum)
        if not report.valid:
            return _invalid(report.failures)
        pi1 = fundamental_group(datum)
        return 0, {
            "datum": datum.name,
            "invariant_factors": list(pi1.invariant_factors),
            "free_rank": pi1.free_rank,
            "torsion": list(pi1.torsion),
            "order": pi1.order(),
        }

    def handle_spin(self, path: Path) -> Result:
        m, failure = self._load_weights(path)
        if m is None:
            return failure
        report = spin_report(m)
        trials = self._trials("spin")
        if trials:
            flips = gauge_flip_test(m, trials, self.seed)
            report["gauge_flip"] = flips.to_json()
            if not flips.invariant:
                return 1, report
        return 0, report

    def handle_involution(self, path: Path) -> Result:
        m, failure = self._load_weights(path)
        if m is None:
            return failure
        report = involution(m).to_json()
        report["lattice"] = m.lattice
        return 0, report

    def handle_h2(self, path: Path) -> Result:
        module = schema.load(path, schema.module_from_json, bounds=self.bounds)
        result = h2(module, self.bounds)
        report = result.to_json()
        report["group"] = module.group.name
        report["moduli"] = list(module.invariant_factors)
        return 0, report

    def handle_extension(self, path: Path) -> Result:
        z = schema.load(path, schema.cocycle_from_json, bounds=self.bounds)
        ext = extension_from_cocycle(z, self.bounds)
        round_trip = classes_equal(cocycle_from_extension(ext), z).equal
        rebuilt = extension_from_cocycle(cocycle_from_extension(ext), self.bounds)
        splitting = find_splitting(ext)
        report = {
            "order": ext.total.order,
            "identified": identify_group(ext.total),
            "abelian": ext.total.is_abelian(),
            "split": splitting is not None,
            "splitting": None if splitting is None else list(splitting),
            "round_trip": round_trip,
            "equivalent_to_rebuilt": are_equivalent(ext, rebuilt),
        }
        code = 0 if round_trip and report["equivalent_to_rebuilt"] else 1
        return code, report

    def _check_max_order(self) -> None:
        if self.max_order < 2:
            raise SizeBoundExceeded("|G x| W| of the smallest instance", 2, self.max_order)

    def handle_keylemma(self) -> Result:
        self._check_max_order()
        summary = run_key_lemma_trials(self.seed, self._trials("keylemma"), self.max_order, self.bounds)
        report = summary.to_json()
        report["max_order"] = self.max_order
        return (0 if summary.ok else 1), report

    def handle_crossedhom(self) -> Result:
        self._check_max_order()
        summary = run_crossed_hom_trials(self.seed, self._trials("crossedhom"), self.max_order,
                                         self.bounds)
        report = summary.to_json()
        report["max_order"] = self.max_order
        return (0 if summary.ok else 1), report

    def handle_sw(self, path: Path) -> Result:
        """
        Stiefel-Whitney classes of one representation, or the Whitney sum
        check when the document is ``{"whitney": [rep, rep]}``.
        """
        rng = random.Random(self.seed)
        document = schema.load_document(path)
        if isinstance(document, dict) and "whitney" in document:
            first, second = self._whitney_pair(path)
            report = whitney_check(first, second, rng, self.bounds)
            return (0 if report.holds else 1), report.to_json()

        rep = schema.load(path, schema.rep_from_json, bounds=self.bounds)
        first_class = sw1(rep)
        second_class = sw2(rep)
        ext = pin_extension(rep, self.bounds)
        independent = decomposition_independent(rep, rng)
        report = {
            "representation": rep.name,
            "group": rep.group.name,
            "dim": rep.dim,
            "sw1": list(first_class),
            "sw1_nontrivial": any(first_class),
            "sw2": second_class.to_json(),
            "pin_extension": {
                "order": ext.total.order,
                "identified": identify_group(ext.total),
            },
            "decomposition_independent": independent,
        }
        return (0 if independent else 1), report

    def _whitney_pair(self, path: Path):
        pair = schema.load_pair(path, "whitney", schema.rep_from_json, bounds=self.bounds)
        if len(pair) != 2:
            raise SchemaError("$.whitney", f"expected 2 representations, got {len(pair)}", str(path))
        return pair

    def handle_selftest(self) -> Result:
        report = run_selftest(self.seed, self.bounds, self.max_order)
        return (0 if report["failed"] == 0 else 1), report
