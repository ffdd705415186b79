"""Parameter tuning, curve families, the search pipeline and its records."""

from .experiment import distribution_experiment, is_root_easy
from .family import Family, format_family, parse_family
from .pipeline import partition, process_t, run_search, search_to_file, two_torsion_filter
from .records import (SearchConfig, SearchRecord, config_from_text, load_config,
                      parse_config_text, read_records, wilson_interval)
from .semismooth import inverse_sigma, rho, semismooth, sigma
from .tuning import TuningChoice, TuningRow, choose_params, tuning_row, tuning_table, weil_bits

__all__ = [
    "Family", "SearchConfig", "SearchRecord", "TuningChoice", "TuningRow", "choose_params",
    "config_from_text", "distribution_experiment", "format_family", "inverse_sigma",
    "is_root_easy", "load_config", "parse_config_text", "parse_family", "partition",
    "process_t", "read_records", "rho", "run_search", "search_to_file", "semismooth", "sigma",
    "tuning_row", "tuning_table", "two_torsion_filter", "weil_bits", "wilson_interval",
]
