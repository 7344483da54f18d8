"""End-to-end checks of the telegf command-line tool."""
import csv
import io
import json
import os
import subprocess
import sys
import tempfile
import unittest

import jsonschema

CLI = sys.argv.pop(1)
DOCS = sys.argv.pop(1)


def run(*args, env=None):
    full_env = dict(os.environ, **(env or {}))
    return subprocess.run([CLI, *args], capture_output=True, env=full_env)


def schema(name):
    with open(os.path.join(DOCS, name)) as f:
        return json.load(f)


def rows(text):
    body = [line for line in text.splitlines() if not line.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(body))))


ANCHOR = ["profile", "--bc", "absorbing", "--c", "1", "--T", "1", "--x0", "0.5", "--t", "2",
          "--xmin", "0", "--xmax", "4", "--nx", "9"]


class Profile(unittest.TestCase):
    def test_anchor_row(self):
        r = run(*ANCHOR, "--method", "closed")
        self.assertEqual(r.returncode, 0, r.stderr)
        row = next(x for x in rows(r.stdout.decode()) if float(x["x"]) == 0.5)
        self.assertAlmostEqual(float(row["closed"]), 0.086658, delta=1e-5)

    def test_all_routes_agree_on_anchor(self):
        r = run(*ANCHOR, "--method", "all")
        self.assertEqual(r.returncode, 0, r.stderr)
        table = rows(r.stdout.decode())
        self.assertEqual(list(table[0].keys()),
                         ["t", "x", "closed", "bromwich", "laplace", "oracle", "max_discrepancy"])
        self.assertTrue(all(float(x["max_discrepancy"]) <= 1e-4 for x in table))

    def test_csv_layout(self):
        text = run(*ANCHOR, "--method", "bromwich").stdout.decode()
        self.assertNotIn("\r", text)
        lines = text.split("\n")
        self.assertTrue(lines[0].startswith("# delta t=2 location=2.5 weight="))
        self.assertEqual(lines[1], "t,x,bromwich")

    def test_json_schema(self):
        r = run("profile", "--bc", "backreaction", "--kappa", "1", "--x0", "1", "--t", "1,2",
                "--xmin", "0", "--xmax", "5", "--nx", "21", "--method", "all", "--format", "json")
        self.assertEqual(r.returncode, 0, r.stderr)
        doc = json.loads(r.stdout)
        jsonschema.validate(doc, schema("profile.schema.json"))
        self.assertNotIn("closed", doc["profiles"][0]["regular"])

    def test_bad_grid_writes_nothing(self):
        with tempfile.TemporaryDirectory() as d:
            out = os.path.join(d, "p.csv")
            r = run("profile", "--xmin", "2", "--xmax", "1", "--out", out)
            self.assertEqual(r.returncode, 2)
            self.assertFalse(os.path.exists(out))

    def test_config_errors(self):
        self.assertEqual(run("profile", "--nx", "1").returncode, 2)
        self.assertEqual(run("profile", "--bc", "sticky").returncode, 2)
        self.assertEqual(run("profile", "--bc", "radiation", "--beta", "1.5").returncode, 2)
        self.assertEqual(run("profile", "--bc", "absorbing", "--xmin", "-1").returncode, 2)
        self.assertEqual(run("profile", "--bc", "backreaction", "--method", "closed").returncode, 2)
        self.assertEqual(run("profile", "--format", "xml").returncode, 2)
        self.assertEqual(run("profile", "--no-such-flag").returncode, 2)

    def test_accuracy_error(self):
        r = run("profile", "--bc", "radiation", "--beta", "0.5", "--t", "2", "--method", "bromwich",
                "--quad-tol", "1e-30")
        self.assertEqual(r.returncode, 3)

    def test_byte_identical_across_thread_counts(self):
        args = [*ANCHOR, "--method", "all"]
        one = run(*args, env={"TELEGF_THREADS": "1"}).stdout
        four = run(*args, env={"TELEGF_THREADS": "4"}).stdout
        self.assertEqual(one, four)
        self.assertEqual(one, run(*args, env={"TELEGF_THREADS": "1"}).stdout)


class Survival(unittest.TestCase):
    def series(self, *args):
        r = run("survival", *args)
        self.assertEqual(r.returncode, 0, r.stderr)
        return rows(r.stdout.decode())

    def test_reflecting_conserves(self):
        for row in self.series("--bc", "reflecting", "--t", "0.5,1,2,4,8"):
            self.assertAlmostEqual(float(row["S_analytic"]), 1.0, delta=1e-6)

    def test_before_arrival(self):
        row = self.series("--bc", "absorbing", "--x0", "1", "--t", "0.25")[0]
        self.assertEqual(float(row["S_analytic"]), 1.0)

    def test_backreaction_dominates_absorbing(self):
        times = "0.5,1.5,2,3,5,8"
        back = self.series("--bc", "backreaction", "--kappa", "1", "--x0", "1", "--t", times)
        absorbing = self.series("--bc", "absorbing", "--x0", "1", "--t", times)
        for b, a in zip(back, absorbing):
            self.assertGreaterEqual(float(b["S_analytic"]), float(a["S_analytic"]))

    def test_oracle_column_and_schema(self):
        r = run("survival", "--bc", "absorbing", "--x0", "1", "--t", "2,4", "--method", "all",
                "--format", "json")
        self.assertEqual(r.returncode, 0, r.stderr)
        doc = json.loads(r.stdout)
        jsonschema.validate(doc, schema("survival.schema.json"))
        self.assertTrue(all(row["abs_diff"] < 1e-3 for row in doc["rows"]))


class Validate(unittest.TestCase):
    def test_quick_run_passes(self):
        with tempfile.TemporaryDirectory() as d:
            out = os.path.join(d, "report.json")
            r = run("validate", "--quick", "--out", out)
            self.assertEqual(r.returncode, 0, r.stderr)
            with open(out) as f:
                report = json.load(f)
        jsonschema.validate(report, schema("validate_report.schema.json"))
        self.assertTrue(report["passed"])
        self.assertTrue(all(c["status"] == "pass" for c in report["checks"]))

    def test_printed_pi_term_is_caught(self):
        r = run("validate", "--quick", "--paper-literal")
        self.assertEqual(r.returncode, 1)
        report = json.loads(r.stdout)
        jsonschema.validate(report, schema("validate_report.schema.json"))
        status = {c["check_id"]: c["status"] for c in report["checks"]}
        self.assertEqual(status["laplace_agreement"], "fail")

    def test_report_is_reproducible(self):
        self.assertEqual(run("validate", "--quick").stdout, run("validate", "--quick").stdout)


if __name__ == "__main__":
    unittest.main()
