"""
Django settings for sample_project project.

Used to run the gradarg test suite and its management command during
development.
"""

SECRET_KEY = 'gradarg-sample-project-not-secret'

DEBUG = True

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'gradarg',
]


# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = True

USE_TZ = True


# Logging

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


# gradarg

GRADARG_TOLERANCE = 1e-12
GRADARG_MAX_ITERATIONS = 10 ** 6
GRADARG_DEPTH = 10
GRADARG_ENUMERATION_BOUND = 25
