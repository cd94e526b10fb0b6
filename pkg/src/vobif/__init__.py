"""Value-offset bifiltrations of grayscale images."""

from .core import (
    NEG_INF_CODE,
    Bigrade,
    BifiltrationResult,
    ComplementEntranceSet,
    EntranceSet,
    GrayImage,
    Metric,
    MetricMismatchError,
    Offset,
    Order,
    PixelLists,
    bigrade,
    bigrade_compare,
    maximal_points,
    minimal_points,
    precedes,
    sublevel_set,
)
from .conversion import compute_bifiltration, convert, prev_distance
from .euclidean import euclidean_thicken, euclidean_thin
from .taxicab import taxicab_thicken, taxicab_thin
from .oracle import (
    enumerate_complement_set,
    enumerate_entrance_set,
    oracle_bifiltration,
    oracle_complement_set,
    oracle_entrance_set,
    present,
)
from .generators import gen_centralized, gen_diagonal, gen_random
from .imgio import load_image, read_entrance_sets, save_pgm, write_entrance_sets
from .analytics import bench_run, compare, entrance_stats
from .fixtures import fixture

__version__ = "0.1.0"
