from __future__ import absolute_import
import sys

import django
from django.conf import settings


LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
        },
    },
    'loggers': {
        'gradarg': {
            'handlers': ['console'],
            'level': 'WARNING',
        },
    },
}


def main(argv=None):
    """Console entry point: ``gradarg <command> [operands] [options]``."""
    if not settings.configured:
        settings.configure(INSTALLED_APPS=['gradarg'], LOGGING=LOGGING)
    django.setup()

    from gradarg.management.commands.gradarg import Command

    if argv is None:
        argv = sys.argv[1:]
    Command().run_from_argv(['gradarg', 'gradarg'] + list(argv))


if __name__ == '__main__':
    main()
