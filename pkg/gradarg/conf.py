from __future__ import absolute_import

from django.conf import settings
from django.core.exceptions import ImproperlyConfigured


DEFAULTS = {
    'GRADARG_TOLERANCE': 1e-12,
    'GRADARG_MAX_ITERATIONS': 10 ** 6,
    'GRADARG_DEPTH': 10,
    'GRADARG_ENUMERATION_BOUND': 25,
    'GRADARG_RENDER_EXPAND': None,
}


def get(name):
    try:
        return getattr(settings, name, DEFAULTS[name])
    except ImproperlyConfigured:
        return DEFAULTS[name]
