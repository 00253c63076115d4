"""
Django settings for GriesmerArcs project.

Generated by 'django-admin startproject' using Django 5.2.1.

For more information on this file, see
https://docs.djangoproject.com/en/5.2/topics/settings/

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.2/ref/settings/
"""

import os
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# Quick-start development settings - unsuitable for production
# See https://docs.djangoproject.com/en/5.2/howto/deployment/checklist/

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.environ.get('DJANGO_SECRET_KEY', 'django-insecure-pgarc-local-only')

# SECURITY WARNING: don't run with debug turned on in production!
DEBUG = True

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'Core',
]

MIDDLEWARE = []


# Database
# https://docs.djangoproject.com/en/5.2/ref/settings/#databases

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': BASE_DIR / 'db.sqlite3',
    }
}


# Internationalization
# https://docs.djangoproject.com/en/5.2/topics/i18n/

LANGUAGE_CODE = 'es'

TIME_ZONE = 'America/Argentina/Buenos_Aires'

USE_I18N = True

USE_TZ = True


# Default primary key field type
# https://docs.djangoproject.com/en/5.2/ref/settings/#default-auto-field

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# ----------------------------
# Arcos y cotas
# ----------------------------
PGARC_DATA = Path(os.environ.get('PGARC_DATA', BASE_DIR / 'Core' / 'data'))

# enumeraciones mas grandes que esto se rechazan
PGARC_SUBSPACE_CAP = int(os.environ.get('PGARC_SUBSPACE_CAP', 10**7))

PGARC_SAMPLE_SIZE = 1000
PGARC_SAMPLE_SEED = 1729

# busquedas en espacios con mas puntos piden --big
PGARC_BIG_POINTS = 127

PGARC_THREADS = int(os.environ.get('PGARC_THREADS', 1))

PGARC_LOG_LEVEL = os.environ.get('PGARC_LOG_LEVEL', 'WARNING')


# Logging
# https://docs.djangoproject.com/en/5.2/topics/logging/

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'simple': {
            'format': '{levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'simple',
        },
    },
    'loggers': {
        'Core': {
            'handlers': ['console'],
            'level': PGARC_LOG_LEVEL,
            'propagate': False,
        },
    },
}
