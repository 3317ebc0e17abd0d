"""Serial throughput measurements for the four fixed-output variants.

Each measurement hashes one fixed random message ``repetitions`` times per
run, discards the warm-up runs, and reports the median of the timed runs.
Warm-up continues past the requested run count until ``MIN_WARMUP_SECONDS``
have elapsed: virtualised hosts often run the first second or so at a much
lower clock.

Cycles/byte comes from wall time and a caller-supplied clock frequency; no
hardware counters are read.
"""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import MeasurementError, ParameterError
from .sha3 import DomainMode, Variant, as_mode, as_variant, keccak_hash

CSV_HEADER = "variant,msg_bytes,reps,elapsed_s,bytes_per_s,cycles_per_byte"
DEFAULT_RUNS = 9
DEFAULT_WARMUP = 2
MIN_WARMUP_SECONDS = 0.5


@dataclass
class BenchResult:
    variant: Variant
    message_bytes: int
    repetitions: int
    elapsed: float  # median seconds per run
    throughput: float  # bytes / second
    cycles_per_byte: float | None = None
    digest: bytes = b""
    run_times: list = field(default_factory=list)

    def csv_line(self) -> str:
        cpb = "" if self.cycles_per_byte is None else f"{self.cycles_per_byte:.3f}"
        return (f"{self.variant.n},{self.message_bytes},{self.repetitions},"
                f"{self.elapsed:.6f},{self.throughput:.1f},{cpb}")


def detect_cpu_hz() -> int | None:
    """Best-effort nominal clock from /proc/cpuinfo (Linux only)."""
    try:
        with open("/proc/cpuinfo") as fh:
            mhz = [float(line.split(":")[1]) for line in fh if line.lower().startswith("cpu mhz")]
    except (OSError, ValueError, IndexError):
        return None
    return int(max(mhz) * 1e6) if mhz else None


def _message(message_bytes: int, seed: int) -> bytes:
    return np.random.default_rng(seed).bytes(message_bytes)


def _timed(variant: Variant, message: bytes, repetitions: int, mode: DomainMode):
    digest = b""
    t0 = time.perf_counter()
    for _ in range(repetitions):
        digest = keccak_hash(variant, message, mode)
    return time.perf_counter() - t0, digest


def _warm_up(variants, message, repetitions, mode, warmup: int, min_seconds: float):
    t0 = time.perf_counter()
    done = 0
    while done < warmup or (warmup and time.perf_counter() - t0 < min_seconds):
        for v in variants:
            _timed(v, message, repetitions, mode)
        done += 1


def _validate(message_bytes: int, repetitions: int, runs: int, warmup: int):
    if message_bytes < 1 or repetitions < 1:
        raise ParameterError("message_bytes and repetitions must both be >= 1")
    if runs < 1 or warmup < 0:
        raise ParameterError("need runs >= 1 and warmup >= 0")


def _result(variant, message_bytes, repetitions, times, digest, cpu_hz) -> BenchResult:
    elapsed = statistics.median(times)
    floor = 1000 * time.get_clock_info("perf_counter").resolution
    if elapsed <= floor:
        raise MeasurementError(f"median run took {elapsed:.3g}s, below the timer floor {floor:.3g}s; "
                               "increase repetitions or message size")
    throughput = message_bytes * repetitions / elapsed
    cpb = cpu_hz / throughput if cpu_hz else None
    return BenchResult(variant, message_bytes, repetitions, elapsed, throughput, cpb, digest, list(times))


def measure(variant, message_bytes: int, repetitions: int, cpu_hz: int | None = None, *,
            runs: int = DEFAULT_RUNS, warmup: int = DEFAULT_WARMUP, mode=DomainMode.KECCAK,
            seed: int = 0) -> BenchResult:
    v, m = as_variant(variant), as_mode(mode)
    _validate(message_bytes, repetitions, runs, warmup)
    message = _message(message_bytes, seed)
    _warm_up([v], message, repetitions, m, warmup, MIN_WARMUP_SECONDS)
    times, digest = [], b""
    for _ in range(runs):
        t, digest = _timed(v, message, repetitions, m)
        times.append(t)
    return _result(v, message_bytes, repetitions, times, digest, cpu_hz)


@dataclass
class RateScalingReport:
    results: dict  # Variant -> BenchResult

    def ratio(self, a, b) -> float:
        return self.results[as_variant(a)].throughput / self.results[as_variant(b)].throughput

    @staticmethod
    def expected_ratio(a, b) -> float:
        return as_variant(a).r / as_variant(b).r

    def ratio_error(self, a, b) -> float:
        return self.ratio(a, b) / self.expected_ratio(a, b) - 1.0

    @property
    def monotone(self) -> bool:
        tp = [self.results[v].throughput for v in sorted(self.results)]
        return all(x >= y for x, y in zip(tp, tp[1:]))

    def table(self) -> str:
        any_r = next(iter(self.results.values()))
        lines = [
            f"# serial keccak throughput, message={any_r.message_bytes} bytes x {any_r.repetitions} reps, "
            f"median of {len(any_r.run_times)} runs after warm-up",
            f"{'variant':>7} {'rate':>5} {'msg_bytes':>10} {'reps':>5} {'elapsed_s':>10} "
            f"{'MB/s':>9} {'cycles/B':>9}",
        ]
        for v in sorted(self.results):
            res = self.results[v]
            cpb = "-" if res.cycles_per_byte is None else f"{res.cycles_per_byte:.2f}"
            lines.append(f"{v.n:>7} {v.r:>5} {res.message_bytes:>10} {res.repetitions:>5} "
                         f"{res.elapsed:>10.4f} {res.throughput / 1e6:>9.2f} {cpb:>9}")
        pairs = ((256, 512), (224, 256))
        for a, b in pairs:
            lines.append(f"# throughput {a}/{b} = {self.ratio(a, b):.3f} "
                         f"(rate ratio {self.expected_ratio(a, b):.3f}, error {self.ratio_error(a, b):+.1%})")
        lines.append(f"# monotone in rate: {'yes' if self.monotone else 'no'}")
        return "\n".join(lines)

    def csv(self) -> str:
        return "\n".join([CSV_HEADER] + [self.results[v].csv_line() for v in sorted(self.results)])


def rate_scaling_report(message_bytes: int = 1 << 20, repetitions: int = 1, cpu_hz: int | None = None, *,
                        runs: int = DEFAULT_RUNS, warmup: int = DEFAULT_WARMUP, mode=DomainMode.KECCAK,
                        seed: int = 0) -> RateScalingReport:
    """Measure all four variants on the same message.

    Runs are interleaved across variants so slow drifts in machine load hit
    every variant equally.
    """
    m = as_mode(mode)
    _validate(message_bytes, repetitions, runs, warmup)
    message = _message(message_bytes, seed)
    variants = list(Variant)
    _warm_up(variants, message, repetitions, m, warmup, MIN_WARMUP_SECONDS)
    times = {v: [] for v in variants}
    digests = {}
    for _ in range(runs):
        for v in variants:
            t, digests[v] = _timed(v, message, repetitions, m)
            times[v].append(t)
    return RateScalingReport({v: _result(v, message_bytes, repetitions, times[v], digests[v], cpu_hz)
                              for v in variants})
