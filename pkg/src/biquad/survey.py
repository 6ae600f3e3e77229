"""Sharded survey of complex biquadratic fields, run as a discrete-event simulation."""

import csv
from dataclasses import astuple, dataclass, fields
import logging
import random

from asimpy import Environment, Process, Queue

from .arith import squarefree_check
from .biquadratic import BiquadField, classify_field
from .config import SURVEY_RMAX_CAP
from .errors import BiquadError, DomainError
from .quadratic import moser_s_ring
from .sos import MAX_DECOMPOSE_4, decompose_4, minus_one_rep, sos_verify

logger = logging.getLogger(__name__)

COORD_RANGE = 20
SAMPLE_TIME = 0.1
POLL_TIME = 0.5


# mccole: row
@dataclass
class SurveyRow:
    """One field's classifier, oracle, and decomposition results."""

    r1: int
    r2: int
    class_tag: str
    s_classifier: int
    s_oracle: int
    max_decomp4_len: int
    sample_size: int
    discrepancy_flag: bool

    # mccole: /row

    def __str__(self):
        flag = " *" if self.discrepancy_flag else ""
        return (
            f"({self.r1}, {self.r2}) {self.class_tag}: "
            f"s {self.s_oracle} (classifier {self.s_classifier}), "
            f"4α needs <= {self.max_decomp4_len}{flag}"
        )


CSV_HEADER = [f.name for f in fields(SurveyRow)]


def row_key(row: SurveyRow):
    return (abs(row.r1), abs(row.r2), row.r1, row.r2)


def survey_fields(rmax: int) -> list[BiquadField]:
    """One field per radicand set, for generators with |r| <= rmax."""
    if not 2 <= rmax <= SURVEY_RMAX_CAP:
        raise DomainError(f"rmax must be between 2 and {SURVEY_RMAX_CAP}, got {rmax}")
    radicands = [
        r
        for r in range(-rmax, rmax + 1)
        if r not in (0, 1) and squarefree_check(r)[0]
    ]
    seen = set()
    result = []
    for i, a in enumerate(radicands):
        for b in radicands[i + 1 :]:
            if a > 0 and b > 0:
                continue
            K = classify_field(a, b)
            key = frozenset(K.radicands)
            if key not in seen:
                seen.add(key)
                result.append(K)
    return result


# mccole: compute
def survey_row(K: BiquadField, samples: int, seed: int) -> SurveyRow:
    """Oracle level and the longest 4*alpha decomposition over sampled alpha."""
    rng = random.Random(f"{seed}:{K.r1}:{K.r2}")
    m1 = minus_one_rep(K)
    s_classifier = min(moser_s_ring(D) for D in K.imaginary_subfields)
    longest = 0
    for _ in range(samples):
        x = [rng.randint(-COORD_RANGE, COORD_RANGE) for _ in range(4)]
        rep = decompose_4(K.from_integral(x))
        if not sos_verify(rep) or len(rep) > MAX_DECOMPOSE_4:
            raise BiquadError(f"{K}: bad decomposition of 4*{x}")
        longest = max(longest, len(rep))
    return SurveyRow(
        r1=K.r1,
        r2=K.r2,
        class_tag=K.class_tag.value,
        s_classifier=s_classifier,
        s_oracle=len(m1),
        max_decomp4_len=longest,
        sample_size=samples,
        discrepancy_flag=len(m1) != s_classifier,
    )


# mccole: /compute


# mccole: worker
class SurveyWorker(Process):
    """Worker that surveys the fields dealt to it."""

    def init(self, worker_id: int, coordinator: "SurveyCoordinator"):
        self.worker_id = worker_id
        self.coordinator = coordinator
        self.task_queue = Queue(self._env)

    async def run(self):
        while True:
            K = await self.task_queue.get()
            if K is None:
                return
            try:
                row = survey_row(K, self.coordinator.samples, self.coordinator.seed)
            except Exception as exc:
                logger.error("[%.1f] worker %d: %s", self.now, self.worker_id, exc)
                self.coordinator.field_failed(K, str(exc))
                continue
            await self.timeout(max(1, row.sample_size) * SAMPLE_TIME)
            logger.info("[%.1f] worker %d: %s", self.now, self.worker_id, row)
            self.coordinator.row_completed(row)


# mccole: /worker


# mccole: coordinator
class SurveyCoordinator(Process):
    """Deals fields to workers round-robin and collects their rows."""

    def init(self, field_list: list[BiquadField], samples: int, seed: int, num_workers: int):
        self.fields = field_list
        self.samples = samples
        self.seed = seed
        self.workers = [SurveyWorker(self._env, i, self) for i in range(num_workers)]
        self.rows: list[SurveyRow] = []
        self.failures: list[tuple[int, int, str]] = []

    async def run(self):
        for i, K in enumerate(self.fields):
            await self.workers[i % len(self.workers)].task_queue.put(K)
        for worker in self.workers:
            await worker.task_queue.put(None)
        while len(self.rows) + len(self.failures) < len(self.fields):
            await self.timeout(POLL_TIME)
        logger.info(
            "[%.1f] coordinator: %d rows, %d failures",
            self.now,
            len(self.rows),
            len(self.failures),
        )

    def row_completed(self, row: SurveyRow):
        self.rows.append(row)

    def field_failed(self, K: BiquadField, reason: str):
        self.failures.append((K.r1, K.r2, reason))


# mccole: /coordinator


@dataclass
class SurveyResult:
    rows: list[SurveyRow]
    failures: list[tuple[int, int, str]]

    @property
    def ok(self) -> bool:
        return not self.failures


def run_survey(rmax: int, samples: int, seed: int = 0, num_workers: int = 4) -> SurveyResult:
    """Survey every field with generators up to rmax; rows come back sorted."""
    if samples < 0:
        raise DomainError(f"samples must be non-negative, got {samples}")
    if num_workers < 1:
        raise DomainError(f"need at least one worker, got {num_workers}")
    env = Environment()
    coordinator = SurveyCoordinator(env, survey_fields(rmax), samples, seed, num_workers)
    env.run()
    return SurveyResult(
        rows=sorted(coordinator.rows, key=row_key),
        failures=sorted(coordinator.failures),
    )


def write_csv(rows: list[SurveyRow], stream):
    writer = csv.writer(stream)
    writer.writerow(CSV_HEADER)
    for row in rows:
        values = astuple(row)
        writer.writerow([str(v).lower() if isinstance(v, bool) else v for v in values])
