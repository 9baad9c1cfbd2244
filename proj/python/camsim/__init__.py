"""CAM beaconing / reactive DCC channel simulator."""

from ._core import (
    ChannelLoad,
    __version__,
    airtime_us,
    build_highway,
    dcc_table,
    default_config,
    jain_index,
    lookup_interval,
    path_loss_db,
    run,
    rx_power_dbm,
)

__all__ = [
    "ChannelLoad",
    "__version__",
    "airtime_us",
    "build_highway",
    "dcc_table",
    "default_config",
    "jain_index",
    "lookup_interval",
    "path_loss_db",
    "run",
    "rx_power_dbm",
]
