"""dB <-> linear conversion helpers.

All internal arithmetic in the library uses linear milliwatt / amplitude
units; these helpers are the only place dB appears.
"""

import numpy as np

SPEED_OF_LIGHT = 299792458.0


def db_to_linear(x_db):
    "Power ratio from dB."
    return 10.0 ** (np.asarray(x_db) / 10.0)


def linear_to_db(x):
    "dB from a positive power ratio."
    return 10.0 * np.log10(x)


def db_to_amplitude(x_db):
    "Amplitude ratio from a power dB value."
    return 10.0 ** (np.asarray(x_db) / 20.0)


def dbm_to_mw(p_dbm):
    "Milliwatts from dBm."
    return 10.0 ** (np.asarray(p_dbm) / 10.0)


def mw_to_dbm(p_mw):
    "dBm from milliwatts."
    return 10.0 * np.log10(p_mw)
