"""Transcript-based protocol engine and the concrete protocols.

Every protocol is a fixed schedule of single-bit sends. A send step computes
its bit from the sender's local input plus the bits previously addressed to
the sender, and nothing else; the designated output party (Alice) produces
the final answer from her local input plus the bits addressed to her. A run
records enough to let audit_run re-derive every transmitted bit and the
output from those views, which is the information-locality contract.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping, Sequence

from .bitcore import BitString, PromiseTriple, f_ghz, f_inner_product
from .qsim import outcome_distribution, sample_outcome, transformed_state

BROADCAST = "*"


@dataclass(frozen=True)
class Message:
    sender: str
    audience: str  # a party id or BROADCAST
    bit: int


@dataclass(frozen=True)
class Transcript:
    records: tuple[Message, ...]

    @property
    def cost(self) -> int:
        return len(self.records)

    def bits_for(self, party: str) -> tuple[int, ...]:
        return tuple(
            m.bit
            for m in self.records
            if m.sender != party and m.audience in (party, BROADCAST)
        )

    def __str__(self) -> str:
        return " ".join(f"{m.sender}->{m.audience}:{m.bit}" for m in self.records)


@dataclass(frozen=True)
class SendStep:
    sender: str
    audience: str
    fn: Callable[[Any, tuple[int, ...]], int]


@dataclass(frozen=True)
class RunResult:
    """Outcome of one protocol run, with everything audit_run needs to replay it."""

    output: int
    transcript: Transcript
    local: Mapping[str, Any] = field(default_factory=dict)
    inputs: Mapping[str, Any] = field(default_factory=dict)
    steps: tuple[SendStep, ...] = ()
    output_fn: Callable[[Any, tuple[int, ...]], int] | None = None
    output_party: str = "A"

    @property
    def cost(self) -> int:
        return self.transcript.cost


@dataclass(frozen=True)
class AuditReport:
    passed: bool
    cost: int
    failures: tuple[str, ...] = ()


@dataclass(frozen=True)
class CountSummary:
    """Per-party zero counts; 2k of those zeros come from the k AND-zero columns."""

    r_a: int
    r_b: int
    r_c: int
    k: int

    def __post_init__(self) -> None:
        assert self.r_a + self.r_b + self.r_c == 2 * self.k, (
            f"zero counts {self.r_a}+{self.r_b}+{self.r_c} != 2*{self.k}"
        )


def count_summary(t: PromiseTriple) -> CountSummary:
    k = t.length - (t.x.bits & t.y.bits & t.z.bits).bit_count()
    return CountSummary(t.x.count_zeros(), t.y.count_zeros(), t.z.count_zeros(), k)


def run_protocol(
    inputs: Mapping[str, Any],
    steps: Sequence[SendStep],
    output_fn: Callable[[Any, tuple[int, ...]], int],
    output_party: str = "A",
    local: Mapping[str, Any] | None = None,
) -> RunResult:
    received: dict[str, list[int]] = {p: [] for p in inputs}
    records = []
    for step in steps:
        bit = step.fn(inputs[step.sender], tuple(received[step.sender]))
        assert bit in (0, 1), f"{step.sender} produced a non-bit {bit!r}"
        records.append(Message(step.sender, step.audience, bit))
        for party in received:
            if party != step.sender and step.audience in (party, BROADCAST):
                received[party].append(bit)
    output = output_fn(inputs[output_party], tuple(received[output_party]))
    assert output in (0, 1)
    return RunResult(
        output=output,
        transcript=Transcript(tuple(records)),
        local=dict(local or {}),
        inputs=dict(inputs),
        steps=tuple(steps),
        output_fn=output_fn,
        output_party=output_party,
    )


def audit_run(result: RunResult) -> AuditReport:
    """Re-derive every transmitted bit and the output from local views only.

    A mismatch names the offending record: it means the recorded bit is not a
    function of the sender's input plus bits previously addressed to the
    sender (or the output is not a function of Alice's view).
    """
    failures: list[str] = []
    records = result.transcript.records
    if result.output_fn is None:
        return AuditReport(False, len(records), ("run carries no replayable steps",))
    if len(records) != len(result.steps):
        failures.append(f"{len(records)} records for {len(result.steps)} scheduled steps")
    received: dict[str, list[int]] = {p: [] for p in result.inputs}
    for i, (step, record) in enumerate(zip(result.steps, records)):
        if (record.sender, record.audience) != (step.sender, step.audience):
            failures.append(f"record {i}: routed {record.sender}->{record.audience}, "
                            f"scheduled {step.sender}->{step.audience}")
        try:
            expected = step.fn(result.inputs[step.sender], tuple(received[step.sender]))
        except Exception as exc:
            failures.append(f"record {i}: replay from {step.sender}'s view failed: {exc!r}")
            expected = None
        if expected != record.bit:
            failures.append(
                f"record {i}: bit {record.bit} is not reproducible from "
                f"{step.sender}'s local view (expected {expected})"
            )
        for party in received:
            if party != record.sender and record.audience in (party, BROADCAST):
                received[party].append(record.bit)
    try:
        expected_out = result.output_fn(
            result.inputs[result.output_party], tuple(received[result.output_party])
        )
    except Exception as exc:
        expected_out = None
        failures.append(f"output replay from {result.output_party}'s view failed: {exc!r}")
    if expected_out != result.output:
        failures.append(
            f"output {result.output} is not reproducible from "
            f"{result.output_party}'s local view (expected {expected_out})"
        )
    return AuditReport(not failures, len(records), tuple(failures))


def _xor(bits: Sequence[int]) -> int:
    acc = 0
    for b in bits:
        acc ^= b
    return acc


def run_quantum_two_bit(t: PromiseTriple, rng) -> RunResult:
    """Entanglement-assisted protocol: two bits, both to Alice.

    Each party measures its half of every shared triple (after a Hadamard on
    the columns where its input bit is 0) and XORs its outcomes into a single
    bit. The joint outcome of column i is drawn once from the exact
    distribution and its three bits are dealt to the three parties, which is
    the measurement of an entangled triple; the dealt bits then count as part
    of each party's local input.
    """
    sampled: dict[str, list[int]] = {"A": [], "B": [], "C": []}
    for column in t.columns():
        outcome = sample_outcome(transformed_state(column), rng)
        sampled["A"].append(outcome.bits[0])
        sampled["B"].append(outcome.bits[1])
        sampled["C"].append(outcome.bits[2])
    s = {p: _xor(bits) for p, bits in sampled.items()}
    inputs = {
        "A": (t.x, tuple(sampled["A"])),
        "B": (t.y, tuple(sampled["B"])),
        "C": (t.z, tuple(sampled["C"])),
    }

    def send_measured_parity(local, _received):
        _word, bits = local
        return _xor(bits)

    def alice_output(local, received):
        _word, bits = local
        return _xor(bits) ^ _xor(received)

    steps = (
        SendStep("B", "A", send_measured_parity),
        SendStep("C", "A", send_measured_parity),
    )
    return run_protocol(
        inputs,
        steps,
        alice_output,
        local={"s": s, "sampled": {p: tuple(v) for p, v in sampled.items()}},
    )


def run_classical_three_bit(t: PromiseTriple) -> RunResult:
    """Three-bit classical protocol.

    Bob sends his zero count mod 4 (high bit then low bit). Carol sends only
    the high bit of hers: the low bit is forced, because the three zero
    counts sum to an even number, so Alice recovers it as (r_A + r_B) mod 2.
    From the sum mod 4 Alice gets the parity of the AND-zero column count k
    and outputs (n - k) mod 2.
    """
    summary = count_summary(t)  # also asserts r_A + r_B + r_C = 2k
    inputs = {"A": t.x, "B": t.y, "C": t.z}

    def bob_high(word, _received):
        return (word.count_zeros() >> 1) & 1

    def bob_low(word, _received):
        return word.count_zeros() & 1

    def carol_high(word, _received):
        return (word.count_zeros() >> 1) & 1

    def alice_output(word, received):
        n = word.length
        r_a = word.count_zeros()
        rb_mod4 = (received[0] << 1) | received[1]
        rc_low = (r_a + rb_mod4) & 1
        rc_mod4 = (received[2] << 1) | rc_low
        doubled_k_mod4 = (r_a + rb_mod4 + rc_mod4) & 3
        assert doubled_k_mod4 & 1 == 0, "zero-count total must be even on the promise"
        k_parity = doubled_k_mod4 >> 1
        return (n - k_parity) & 1

    steps = (
        SendStep("B", "A", bob_high),
        SendStep("B", "A", bob_low),
        SendStep("C", "A", carol_high),
    )
    return run_protocol(inputs, steps, alice_output, local={"counts": summary})


def run_classical_count(t: PromiseTriple) -> RunResult:
    """Full-count protocol: Bob and Carol each send their zero count.

    Counts go as fixed-width big-endian fields of ceil(log2(n+1)) bits, so
    the cost is 2*ceil(log2(n+1)). Alice reconstructs k exactly and outputs
    (n - k) mod 2.
    """
    summary = count_summary(t)
    n = t.length
    width = n.bit_length()  # ceil(log2(n+1)) for n >= 1
    inputs = {"A": t.x, "B": t.y, "C": t.z}

    def count_bit(pos: int):
        def fn(word, _received):
            return (word.count_zeros() >> pos) & 1

        return fn

    def alice_output(word, received):
        r_b = 0
        r_c = 0
        for bit in received[:width]:
            r_b = (r_b << 1) | bit
        for bit in received[width:]:
            r_c = (r_c << 1) | bit
        total = word.count_zeros() + r_b + r_c
        assert total % 2 == 0
        k = total // 2
        return (word.length - k) & 1

    steps = tuple(
        SendStep(party, "A", count_bit(pos))
        for party in ("B", "C")
        for pos in range(width - 1, -1, -1)
    )
    return run_protocol(inputs, steps, alice_output, local={"counts": summary})


def run_parity_one_bit(x: BitString, y: BitString) -> RunResult:
    """Two-party parity: Bob's single bit is the XOR of his word."""
    if x.length != y.length:
        raise ValueError(f"length mismatch: {x.length} vs {y.length}")
    inputs = {"A": x, "B": y}

    def bob_parity(word, _received):
        return word.parity()

    def alice_output(word, received):
        return word.parity() ^ received[0]

    return run_protocol(inputs, (SendStep("B", "A", bob_parity),), alice_output)


def run_ip_trivial(x: BitString, y: BitString) -> RunResult:
    """Two-party inner product the blunt way: Bob sends his whole word."""
    if x.length != y.length:
        raise ValueError(f"length mismatch: {x.length} vs {y.length}")
    inputs = {"A": x, "B": y}

    def word_bit(i: int):
        def fn(word, _received):
            return word.bit(i)

        return fn

    def alice_output(word, received):
        other = BitString.from_str("".join(str(b) for b in received))
        return f_inner_product(word, other)

    steps = tuple(SendStep("B", "A", word_bit(i)) for i in range(1, y.length + 1))
    return run_protocol(inputs, steps, alice_output)


def quantum_output_support(t: PromiseTriple) -> set[int]:
    """Every output value the quantum protocol can produce on t.

    Enumerates the full product of per-column outcome supports instead of
    sampling; the set must be the singleton {f_ghz(t)}. Exponential in n,
    intended for small n.
    """
    per_column = [
        [outcome.bits for outcome in outcome_distribution(transformed_state(col))]
        for col in t.columns()
    ]
    outputs = set()
    for combo in itertools.product(*per_column):
        s_a = _xor([bits[0] for bits in combo])
        s_b = _xor([bits[1] for bits in combo])
        s_c = _xor([bits[2] for bits in combo])
        outputs.add(s_a ^ s_b ^ s_c)
    return outputs


def protocol_agreement(t: PromiseTriple, rng) -> dict[str, int]:
    """Run all three protocols on t and return their outputs plus the direct value."""
    return {
        "direct": f_ghz(t),
        "quantum_two_bit": run_quantum_two_bit(t, rng).output,
        "classical_three_bit": run_classical_three_bit(t).output,
        "classical_count": run_classical_count(t).output,
    }
