# Copyright 2026 The stpa-rec Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Smoke tests for the Python bindings."""

from fractions import Fraction

import pytest

import stpa

P = "(0,0,0)"


def test_parse_round_trip():
    t = stpa.parse(f"es(c,d; 3; {P}) . dd(abs 5) + er(c,d; 1/2; {P})")
    assert stpa.parse(str(t)) == t
    assert t.closed


def test_parse_error_is_reported():
    with pytest.raises(stpa.ParseError):
        stpa.parse("es(c,d;")


def test_send_receive_normalizes_to_send_then_receive():
    t = f"L{{c}}@0:{{}}(ps(c,d; abs 2; {P}) || pr(c,d; abs 0..5; {P}))"
    r, trace = stpa.normalize(t, trace=True)
    assert r == stpa.parse(f"es(c,d; 2; {P}) . er(c,d; 2; {P})")
    assert trace and all("axiom" in s for s in trace)


def test_step_and_idle():
    steps = stpa.step(f"es(c,d; 3; {P})", at="1")
    assert len(steps) == 1
    label, nxt = steps[0]
    assert label.startswith("es(c,d; 3;") and nxt is None
    assert stpa.idle(f"es(c,d; 3; {P})", at="1") == "[1, 3]"


def test_bisim_distinguishes_labels():
    v = stpa.bisim(f"es(c,d;1;{P})", f"es(c,d;2;{P})")
    assert v["verdict"] == "distinguished"


def test_irrational_distance():
    with pytest.raises(stpa.NotRepresentable):
        stpa.step("pr(c,d; abs 0..5; (1,1,0))", at="2",
                  sigma="{(c,d,2,(0,0,0))}")


def test_meadow_laws_hold():
    rows = stpa.meadow_selftest(samples=200, seed=7)
    assert rows and all(r["failed"] == 0 for r in rows)


def test_par_cycle_condition_matches_direct_sum():
    # Unit legs S-K, K-R, R-L, L-S and unit delays t_K, t_R, t_R', t_L.
    expected = Fraction(4 * 1 + 4 * 1)
    ok, cycle = stpa.par_cycle_condition(timeout="10")
    assert ok and Fraction(cycle) == expected
    assert not stpa.par_cycle_condition(timeout="8")[0]


def test_par_single_datum_without_errors():
    r = stpa.par_check(["d1"], data=["d1"], retransmission_bound=0)
    assert r["verdict"] == "ok"
    delivered = [a for _, a in r["trace"] if a and a.startswith("es(ch2")]
    assert delivered == []  # no violation trace is recorded on success


def test_cli_entry_point():
    code, out, _ = stpa.cli(["step", "--at", "1", "--sigma", "{}",
                             f"es(c,d; 3; {P})"])
    assert code == 0 and out.count("\n") == 1
    code, _, _ = stpa.cli(["bisim", f"es(c,d;1;{P})", f"es(c,d;2;{P})"])
    assert code == 1
