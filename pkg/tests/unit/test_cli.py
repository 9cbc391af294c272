"""
Unit tests for the spinlift command-line service.
"""

import io
import json
import tempfile
from pathlib import Path
from unittest import mock

from twisted.trial import unittest

from spinlift import __version__
from spinlift.cli import (
    EXIT_INTERNAL,
    EXIT_INVALID,
    EXIT_OK,
    JobConfig,
    SpinliftJobService,
    create_argument_parser,
    error_details,
    format_text,
    main,
    resolve_bound,
)
from spinlift.config import BOUND_ENV_VAR
from spinlift.errors import NonScalarDefect, ParseError, SizeBoundExceeded, UsageError
from spinlift.handlers import CommandHandler

EXAMPLES = Path(__file__).resolve().parents[2] / "docs" / "examples"


def run_job(command, input_name=None, **kwargs):
    """Run one job against a docs example and return (exit code, report text)."""
    stream = io.StringIO()
    input_path = EXAMPLES / input_name if input_name else None
    code = SpinliftJobService(JobConfig(command, input_path, **kwargs), stream).start()
    return code, stream.getvalue()


class TestArgumentParser(unittest.TestCase):
    """Test cases for the argument parser."""

    def setUp(self):
        self.parser = create_argument_parser()

    def test_defaults(self):
        """Test the default flag values."""
        args = self.parser.parse_args(["pi1", "--input", "pgl2.json"])
        self.assertEqual(args.command, "pi1")
        self.assertEqual(args.input, Path("pgl2.json"))
        self.assertEqual(args.seed, 0)
        self.assertIsNone(args.bound)
        self.assertIsNone(args.trials)
        self.assertEqual(args.output_format, "json")
        self.assertFalse(args.debug)

    def test_short_flags(self):
        """Test the short forms of the randomized-check flags."""
        args = self.parser.parse_args(["keylemma", "-s", "7", "-b", "32", "-t", "50", "-f", "text"])
        self.assertEqual((args.seed, args.bound, args.trials), (7, 32, 50))
        self.assertEqual(args.output_format, "text")

    def test_unknown_command(self):
        """Test that unknown commands are rejected by argparse."""
        with mock.patch("sys.stderr", new_callable=io.StringIO):
            self.assertRaises(SystemExit, self.parser.parse_args, ["solve"])

    def test_version(self):
        """Test that --version prints the package version."""
        with mock.patch("sys.stdout", new_callable=io.StringIO) as out:
            self.assertRaises(SystemExit, self.parser.parse_args, ["--version"])
        self.assertIn(__version__, out.getvalue())


class TestResolveBound(unittest.TestCase):
    """Test cases for the --bound / SPINLIFT_BOUND precedence."""

    def test_flag_wins(self):
        """Test that the flag overrides the environment."""
        self.assertEqual(resolve_bound(8, {BOUND_ENV_VAR: "64"}), 8)

    def test_environment(self):
        """Test that the environment applies without a flag."""
        self.assertEqual(resolve_bound(None, {BOUND_ENV_VAR: "16"}), 16)

    def test_unset(self):
        """Test that neither source leaves the bound unset."""
        self.assertIsNone(resolve_bound(None, {}))
        self.assertIsNone(resolve_bound(None, {BOUND_ENV_VAR: ""}))

    def test_invalid_values(self):
        """Test that negative and non-integer bounds are rejected."""
        self.assertRaises(ValueError, resolve_bound, -1, {})
        self.assertRaises(ValueError, resolve_bound, None, {BOUND_ENV_VAR: "many"})
        self.assertRaises(ValueError, resolve_bound, None, {BOUND_ENV_VAR: "-4"})

    def test_job_bounds(self):
        """Test that the bound only replaces the group order limit."""
        bounds = JobConfig("pi1", bound=12).bounds
        self.assertEqual(bounds.group_order, 12)
        self.assertEqual(bounds.extension_order, JobConfig("pi1").bounds.extension_order)


class TestCommands(unittest.TestCase):
    """Test cases for running commands on the shipped examples."""

    def test_pi1(self):
        """Test pi_1 of PGL2."""
        code, text = run_job("pi1", "pgl2.json")
        report = json.loads(text)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report["invariant_factors"], [2])
        self.assertEqual(report["command"], "pi1")
        self.assertEqual(report["version"], __version__)

    def test_spin(self):
        """Test the tautological representation of PGL2."""
        code, text = run_job("spin", "pgl2_taut.json")
        report = json.loads(text)
        self.assertEqual(code, EXIT_OK)
        self.assertFalse(report["lifts"])
        self.assertEqual(report["spin_character"], [1])
        self.assertEqual(report["involution"], [1])

    def test_spin_with_gauge_flips(self):
        """Test that --trials adds the gauge flip report."""
        code, text = run_job("spin", "pgl2_taut.json", trials=20, seed=3)
        report = json.loads(text)
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(report["gauge_flip"]["invariant"])

    def test_involution(self):
        """Test the involution report of the SL2 adjoint representation."""
        code, text = run_job("involution", "sl2_adjoint.json")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(text)["lattice"], "cocharacter")

    def test_h2(self):
        """Test H^2(C2xC2, Z/2)."""
        code, text = run_job("h2", "c2xc2_z2.json")
        report = json.loads(text)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report["invariant_factors"], [2, 2, 2])
        self.assertEqual(report["order"], 8)

    def test_extension(self):
        """Test the nonsplit extension of C2 by Z/2."""
        code, text = run_job("extension", "c2_nonsplit.json")
        report = json.loads(text)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report["identified"], "C4")
        self.assertFalse(report["split"])
        self.assertTrue(report["round_trip"])

    def test_keylemma(self):
        """Test the seeded key lemma run."""
        code, text = run_job("keylemma", seed=7, bound=32, trials=50)
        report = json.loads(text)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report["passed"], 50)
        self.assertEqual(report["failed"], 0)
        self.assertEqual(report["max_order"], 32)

    def test_crossedhom(self):
        """Test the seeded crossed homomorphism run."""
        code, text = run_job("crossedhom", seed=7, trials=10)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(text)["passed"], 10)

    def test_sw(self):
        """Test the C4 rotation."""
        code, text = run_job("sw", "c4_rotation.json")
        report = json.loads(text)
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(report["sw2"]["nontrivial"])
        self.assertEqual(report["pin_extension"]["identified"], "C8")
        self.assertTrue(report["decomposition_independent"])

    def test_whitney(self):
        """Test the Whitney sum document."""
        code, text = run_job("sw", "whitney_c2.json", seed=2)
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(json.loads(text)["holds"])

    def test_same_seed_same_output(self):
        """Test that reports are reproducible for a fixed seed."""
        first = run_job("keylemma", seed=5, trials=5)
        second = run_job("keylemma", seed=5, trials=5)
        self.assertEqual(first, second)

    def test_text_format(self):
        """Test the flat text summary."""
        code, text = run_job("pi1", "pgl2.json", output_format="text")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("invariant_factors: [2]", text.splitlines())


class TestExitCodes(unittest.TestCase):
    """Test cases for error reporting and exit codes."""

    def test_missing_input(self):
        """Test that commands reading a document require --input."""
        code, text = run_job("pi1")
        self.assertEqual(code, EXIT_INVALID)
        self.assertEqual(json.loads(text)["error"]["type"], "UsageError")

    def test_parse_error(self):
        """Test that an unreadable document exits 2 with its path."""
        code, text = run_job("pi1", "missing.json")
        report = json.loads(text)
        self.assertEqual(code, EXIT_INVALID)
        self.assertEqual(report["error"]["type"], "ParseError")
        self.assertTrue(report["error"]["path"].endswith("missing.json"))

    def test_schema_error(self):
        """Test that a document of the wrong kind exits 2."""
        code, text = run_job("h2", "pgl2.json")
        report = json.loads(text)
        self.assertEqual(code, EXIT_INVALID)
        self.assertEqual(report["error"]["type"], "SchemaError")

    def test_bound_exceeded(self):
        """Test that a too-small bound exits 2."""
        code, text = run_job("h2", "c2xc2_z2.json", bound=2)
        report = json.loads(text)
        self.assertEqual(code, EXIT_INVALID)
        self.assertEqual(report["error"]["type"], "SizeBoundExceeded")
        self.assertEqual(report["error"]["bound"], 2)

    def test_max_order_too_small(self):
        """Test that --bound 1 leaves no room for lemma instances."""
        code, _ = run_job("keylemma", bound=1)
        self.assertEqual(code, EXIT_INVALID)

    def test_invalid_weights(self):
        """Test that an unbalanced multiset exits 2 with the failures listed."""
        with tempfile.TemporaryDirectory() as root:
            path = Path(root) / "unbalanced.json"
            path.write_text(json.dumps({"datum": "PGL2", "weights": [{"weight": [1], "multiplicity": 1}]}))
            stream = io.StringIO()
            code = SpinliftJobService(JobConfig("spin", path), stream).start()
        report = json.loads(stream.getvalue())
        self.assertEqual(code, EXIT_INVALID)
        self.assertFalse(report["valid"])
        self.assertTrue(report["errors"])

    def test_internal_error(self):
        """Test that an inconsistency in the pin lifts exits 1."""
        with mock.patch.object(CommandHandler, "handle", side_effect=NonScalarDefect("defect")):
            code, text = run_job("sw", "c4_rotation.json")
        self.assertEqual(len(self.flushLoggedErrors(NonScalarDefect)), 1)
        self.assertEqual(code, EXIT_INTERNAL)
        self.assertEqual(json.loads(text)["error"]["type"], "NonScalarDefect")

    def test_unexpected_error(self):
        """Test that any other exception exits 1."""
        with mock.patch.object(CommandHandler, "handle", side_effect=KeyError("x")):
            code, _ = run_job("pi1", "pgl2.json")
        self.assertEqual(len(self.flushLoggedErrors(KeyError)), 1)
        self.assertEqual(code, EXIT_INTERNAL)

    def test_internal_value_error(self):
        """Test that a ValueError outside the error hierarchy exits 1, not 2."""
        bug = ValueError("Cocycles take values in different modules")
        with mock.patch.object(CommandHandler, "handle", side_effect=bug):
            code, text = run_job("extension", "c2_nonsplit.json")
        self.assertEqual(len(self.flushLoggedErrors(ValueError)), 1)
        self.assertEqual(code, EXIT_INTERNAL)
        self.assertEqual(json.loads(text)["error"]["type"], "ValueError")

    def test_unknown_command_is_usage_error(self):
        """Test that the handler rejects unknown commands as invalid usage."""
        self.assertRaises(UsageError, CommandHandler().handle, "solve")

    def test_failed_check(self):
        """Test that a failed randomized check exits 1."""
        with mock.patch.object(CommandHandler, "handle", return_value=(1, {"passed": 0, "failed": 1})):
            code, text = run_job("keylemma")
        self.assertEqual(code, EXIT_INTERNAL)
        self.assertEqual(json.loads(text)["failed"], 1)

    def test_error_details(self):
        """Test the structured error fields."""
        details = error_details(ParseError("a.json", "Expecting value", 3, 1))
        self.assertEqual((details["line"], details["column"]), (3, 1))
        details = error_details(SizeBoundExceeded("group order", 8, 4))
        self.assertEqual((details["what"], details["size"], details["bound"]), ("group order", 8, 4))


class TestOutput(unittest.TestCase):
    """Test cases for report destinations."""

    def setUp(self):
        self.tempdir = tempfile.TemporaryDirectory()
        self.output = Path(self.tempdir.name) / "report.json"

    def tearDown(self):
        self.tempdir.cleanup()

    def test_json_report_file(self):
        """Test that --output receives the report and stdout stays empty."""
        code, text = run_job("pi1", "pgl2.json", output_path=self.output)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(text, "")
        self.assertEqual(json.loads(self.output.read_text())["invariant_factors"], [2])

    def test_text_with_report_file(self):
        """Test that text output still goes to the stream."""
        code, text = run_job("pi1", "pgl2.json", output_path=self.output, output_format="text")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("order: 2", text)
        self.assertTrue(self.output.exists())

    def test_format_text_sections(self):
        """Test the selftest layout of the text summary."""
        report = {"passed": 3, "failed": 1, "sections": [
            {"name": "cohomology", "passed": 3, "failed": 1, "failures": ["|H2(C2, Z/2)|: got 1"]},
        ]}
        lines = format_text(report).splitlines()
        self.assertEqual(lines[0], "failed: 1")
        self.assertIn("  cohomology: 3 passed, 1 failed", lines)
        self.assertIn("    |H2(C2, Z/2)|: got 1", lines)


class TestMain(unittest.TestCase):
    """Test cases for the console entry point."""

    def test_exit_code(self):
        """Test that main exits with the job's code."""
        with mock.patch("sys.stdout", new_callable=io.StringIO) as out:
            with self.assertRaises(SystemExit) as info:
                main(["pi1", "--input", str(EXAMPLES / "pgl2.json")])
        self.assertEqual(info.exception.code, EXIT_OK)
        self.assertEqual(json.loads(out.getvalue())["invariant_factors"], [2])

    def test_environment_bound(self):
        """Test that SPINLIFT_BOUND reaches the job."""
        with mock.patch.dict("os.environ", {BOUND_ENV_VAR: "2"}):
            with mock.patch("sys.stdout", new_callable=io.StringIO), \
                    mock.patch("sys.stderr", new_callable=io.StringIO):
                with self.assertRaises(SystemExit) as info:
                    main(["h2", "--input", str(EXAMPLES / "c2xc2_z2.json")])
        self.assertEqual(info.exception.code, EXIT_INVALID)

    def test_configuration_error(self):
        """Test that a malformed SPINLIFT_BOUND exits 2 before running."""
        with mock.patch.dict("os.environ", {BOUND_ENV_VAR: "lots"}):
            with mock.patch("sys.stderr", new_callable=io.StringIO) as err:
                with self.assertRaises(SystemExit) as info:
                    main(["selftest"])
        self.assertEqual(info.exception.code, EXIT_INVALID)
        self.assertIn("Configuration error", err.getvalue())
