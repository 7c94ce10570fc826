"""
Django settings for the hitmat laboratory.
Simulation and verification of hitting-time phenomena in random 0-1 matrix processes.
"""

from pathlib import Path
from decouple import config

# Build paths inside the project
BASE_DIR = Path(__file__).resolve().parent.parent

# Security Settings
# In production, SECRET_KEY MUST be set via environment variable
_default_secret = 'django-insecure-change-this-in-production'
SECRET_KEY = config('SECRET_KEY', default=_default_secret)
DEBUG = config('DEBUG', default=True, cast=bool)

# Validate SECRET_KEY in production
if not DEBUG and SECRET_KEY == _default_secret:
    raise ValueError(
        "SECRET_KEY must be set via environment variable in production. "
        "Generate a secure key using: python -c 'from django.core.management.utils import get_random_secret_key; print(get_random_secret_key())'"
    )

ALLOWED_HOSTS = config('ALLOWED_HOSTS', default='localhost,127.0.0.1').split(',')

# Application definition
INSTALLED_APPS = [
    'django.contrib.auth',
    'django.contrib.contenttypes',

    # Third-party apps
    'rest_framework',
    'drf_spectacular',

    # Local apps
    'apps.core',
    'apps.matrix',
    'apps.process',
    'apps.structure',
    'apps.walks',
    'apps.lofford',
    'apps.experiments',
]

MIDDLEWARE = [
    'django.middleware.security.SecurityMiddleware',
    'django.middleware.common.CommonMiddleware',
]

ROOT_URLCONF = 'config.urls'

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {
            'context_processors': [
                'django.template.context_processors.request',
            ],
        },
    },
]

WSGI_APPLICATION = 'config.wsgi.application'

# Database
# Campaign results live in files; the database only backs Django's own apps.
DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': config('DB_NAME', default=str(BASE_DIR / 'hitmat.sqlite3')),
    }
}

# Internationalization
LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True

STATIC_URL = '/static/'

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# ============================================================================
# REST FRAMEWORK CONFIGURATION
# ============================================================================
REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
    'DEFAULT_PARSER_CLASSES': [
        'rest_framework.parsers.JSONParser',
    ],
    'DEFAULT_AUTHENTICATION_CLASSES': [],
    'DEFAULT_PERMISSION_CLASSES': [
        'rest_framework.permissions.AllowAny',
    ],
    'UNAUTHENTICATED_USER': None,
    'DEFAULT_SCHEMA_CLASS': 'drf_spectacular.openapi.AutoSchema',
    'EXCEPTION_HANDLER': 'apps.core.exceptions.custom_exception_handler',
}

# ============================================================================
# API DOCUMENTATION (Swagger/OpenAPI)
# ============================================================================
SPECTACULAR_SETTINGS = {
    'TITLE': 'hitmat laboratory API',
    'DESCRIPTION': 'Exact rank, template validation and Littlewood-Offord atoms for random 0-1 matrices',
    'VERSION': '1.0.0',
    'SERVE_INCLUDE_SCHEMA': False,
    'SCHEMA_PATH_PREFIX': '/api/v1',
}

# ============================================================================
# LABORATORY CONFIGURATION
# ============================================================================
HITMAT = {
    # Campaign execution
    'WORKERS': config('HITMAT_WORKERS', default=1, cast=int),
    'OUTPUT_DIR': config('HITMAT_OUTPUT_DIR', default=str(BASE_DIR / 'results')),

    # Exact rank
    'BAREISS_MAX_N': config('HITMAT_BAREISS_MAX_N', default=64, cast=int),
    'PRIME_LOW_BITS': config('HITMAT_PRIME_LOW_BITS', default=60, cast=int),
    'PRIME_HIGH_BITS': config('HITMAT_PRIME_HIGH_BITS', default=62, cast=int),

    # Structure checkers
    'EXACT_BLOCKED_MAX_M': config('HITMAT_EXACT_BLOCKED_MAX_M', default=24, cast=int),
    'EXACT_BLOCKED_MAX_B': config('HITMAT_EXACT_BLOCKED_MAX_B', default=6, cast=int),
    'EXACT_BLOCKED_MAX_SUBSETS': config('HITMAT_EXACT_BLOCKED_MAX_SUBSETS', default=2_000_000, cast=int),
    'SAMPLED_SUBSETS': config('HITMAT_SAMPLED_SUBSETS', default=2000, cast=int),
    'SAMPLED_SIZE_CAP': config('HITMAT_SAMPLED_SIZE_CAP', default=6, cast=int),
    'LOW_DEGREE_ROWS': config('HITMAT_LOW_DEGREE_ROWS', default=20, cast=int),
    'LOW_DEGREE_SIZE_CAP': config('HITMAT_LOW_DEGREE_SIZE_CAP', default=8, cast=int),

    # Littlewood-Offord enumeration caps
    'LINEAR_MAX_K': config('HITMAT_LINEAR_MAX_K', default=24, cast=int),
    'BILINEAR_MAX_K': config('HITMAT_BILINEAR_MAX_K', default=12, cast=int),
    'QUADRATIC_MAX_K': config('HITMAT_QUADRATIC_MAX_K', default=20, cast=int),

    # Long-running acceptance suite
    'ACCEPTANCE': config('HITMAT_ACCEPTANCE', default=False, cast=bool),
}

# ============================================================================
# LOGGING
# ============================================================================
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {process:d} {thread:d} {message}',
            'style': '{',
        },
        'simple': {
            'format': '{levelname} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'level': config('HITMAT_LOG_LEVEL', default='INFO'),
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
        'file': {
            'level': 'ERROR',
            'class': 'logging.FileHandler',
            'filename': BASE_DIR / 'logs' / 'hitmat.log',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        'django': {
            'handlers': ['console', 'file'],
            'level': 'INFO',
            'propagate': False,
        },
        'apps': {
            'handlers': ['console', 'file'],
            'level': config('HITMAT_LOG_LEVEL', default='INFO'),
            'propagate': False,
        },
    },
}

# Create logs directory if it doesn't exist
LOGS_DIR = BASE_DIR / 'logs'
LOGS_DIR.mkdir(exist_ok=True)
