"""Day-ahead wind-speed forecasting via time-series partitioning.

A 10-minute wind-speed series is reshaped into a days-by-slots matrix and
every time-of-day slot gets its own one-step AR model fitted by the Burg
method; a Morlet wavelet scan justifies the slot count by detecting the
dominant (diurnal) period.  Persistence and a single iterated AR model
serve as baselines, with a backtest harness scoring all of them by hourly
RMSE.

The heavier I/O layers are not re-exported here: plotting with matplotlib
lives in ``windcast.figures`` and the command line in ``windcast.cli``.
"""

from .burg import (
    ArModel,
    OrderCriterion,
    fit_burg,
    is_stable,
    predict_multi,
    predict_one,
    select_order,
)
from .config import ENV_CONFIG, ConfigError, RunConfig, load_config_file, merge_config
from .errors import (
    AllDaysDropped,
    AllMasked,
    EmptyInput,
    EmptyList,
    EmptySeries,
    InconsistentSamplingInterval,
    IndexOutOfRange,
    InsufficientHistory,
    InvalidPeriod,
    LengthMismatch,
    MissingHistory,
    NegativeSpeed,
    NoDominantPeriod,
    NonFiniteInput,
    NonMonotonicTimestamps,
    NotDivisible,
    NotEnoughDays,
    ParseError,
    SeriesTooShort,
    TooShort,
    UnknownMethod,
    WindcastError,
    WriteError,
)
from .forecast import (
    ALL_METHODS,
    METHOD_PARTITIONED,
    METHOD_PERSISTENCE,
    METHOD_SIMPLE,
    DayForecast,
    EvalReport,
    ForecastConfig,
    MethodScore,
    averaged_rmse,
    backtest,
    forecast_day_partitioned,
    forecast_day_simple_ar,
    forecast_persistence,
    hourly_rmse,
)
from .ingest import FORMAT_EPOCH, FORMAT_ISO, IngestSchema, load_csv, save_csv
from .series import (
    GAP_DROP_DAY,
    GAP_LINEAR,
    INTERPOLATED,
    OBSERVED,
    PartitionMatrix,
    TimeSeries,
    column,
    fill_gaps,
    flatten,
    partition,
)
from .svgplot import emit_forecast_plot, emit_spectrum_plot
from .synth import DEFAULT_ORIGIN, make_diurnal_corpus, make_white_noise_corpus
from .wavelet import (
    CwtGrid,
    CwtResult,
    MorletWavelet,
    PowerSpectrum,
    cwt,
    dominant_period,
    fourier_period,
    global_spectrum,
    morlet_value,
    power_spectrum,
    scale_grid,
    spectrum_peak,
)

__version__ = "0.1.0"
