import os
from pathlib import Path
import dj_database_url

# 1. Base Paths
BASE_DIR = Path(__file__).resolve().parent.parent

# 2. Security Settings
SECRET_KEY = os.getenv('SECRET_KEY', 'django-insecure-change-this-before-deploying')
DEBUG = os.getenv('DEBUG', 'False') == 'True'

ALLOWED_HOSTS = [
    'localhost',
    '127.0.0.1',
    'testserver',
]

if os.getenv('ALLOWED_HOSTS'):
    ALLOWED_HOSTS += [h.strip() for h in os.getenv('ALLOWED_HOSTS').split(',') if h.strip()]

SECURE_PROXY_SSL_HEADER = ('HTTP_X_FORWARDED_PROTO', 'https')

# 3. Application Definition
INSTALLED_APPS = [
    'django.contrib.admin',
    'django.contrib.auth',
    'django.contrib.contenttypes',
    'django.contrib.sessions',
    'django.contrib.messages',
    'django.contrib.staticfiles',
    'rest_framework',
    'corsheaders',
    'django_filters',
    'netload',
]

MIDDLEWARE = [
    'corsheaders.middleware.CorsMiddleware',  # Keep this at the very top
    'django.middleware.security.SecurityMiddleware',
    'whitenoise.middleware.WhiteNoiseMiddleware',
    'django.contrib.sessions.middleware.SessionMiddleware',
    'django.middleware.common.CommonMiddleware',
    'django.middleware.csrf.CsrfViewMiddleware',
    'django.contrib.auth.middleware.AuthenticationMiddleware',
    'django.contrib.messages.middleware.MessageMiddleware',
    'django.middleware.clickjacking.XFrameOptionsMiddleware',
]

ROOT_URLCONF = 'netload_server.urls'

WSGI_APPLICATION = 'netload_server.wsgi.application'

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# 4. Templates
TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {
            'context_processors': [
                'django.template.context_processors.debug',
                'django.template.context_processors.request',
                'django.contrib.auth.context_processors.auth',
                'django.contrib.messages.context_processors.messages',
            ],
        },
    },
]

# 5. Database Logic
DATABASE_URL = os.getenv('DATABASE_URL')

if DATABASE_URL:
    DATABASES = {
        'default': dj_database_url.config(
            default=DATABASE_URL,
            conn_max_age=600,
            ssl_require=not DEBUG and DATABASE_URL.startswith('postgres')
        )
    }
else:
    DATABASES = {
        'default': {
            'ENGINE': 'django.db.backends.sqlite3',
            'NAME': BASE_DIR / 'db.sqlite3',
        }
    }

# 6. Production Security
if not DEBUG:
    SESSION_COOKIE_SECURE = True
    CSRF_COOKIE_SECURE = True

# 7. Static Files
STATIC_URL = '/static/'
STATIC_ROOT = BASE_DIR / 'staticfiles'
STATICFILES_STORAGE = 'whitenoise.storage.CompressedStaticFilesStorage'

# 8. CORS Configuration
CORS_ALLOW_ALL_ORIGINS = False
CORS_ALLOWED_ORIGINS = [
    o.strip() for o in os.getenv('CORS_ALLOWED_ORIGINS', 'http://localhost:5173').split(',') if o.strip()
]

# 9. REST Framework
REST_FRAMEWORK = {
    'DEFAULT_AUTHENTICATION_CLASSES': ('rest_framework.authentication.SessionAuthentication',),
    'DEFAULT_PERMISSION_CLASSES': ('rest_framework.permissions.AllowAny',),
}

# 10. Logging
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {'format': '%(asctime)s %(levelname)s %(name)s: %(message)s'},
    },
    'handlers': {
        'console': {'class': 'logging.StreamHandler', 'formatter': 'plain'},
    },
    'loggers': {
        'django': {'handlers': ['console'], 'level': 'WARNING'},
        'netload': {
            'handlers': ['console'],
            'level': os.getenv('NETLOAD_LOG_LEVEL', 'WARNING'),
            'propagate': False,
        },
    },
}

# 11. Profiling protocol defaults (command-line flags override these)
NETLOAD = {
    'GRID': os.getenv('NETLOAD_GRID', '4:32:4'),
    'REPETITIONS': int(os.getenv('NETLOAD_REPETITIONS', '10')),
    'DEGREE': int(os.getenv('NETLOAD_DEGREE', '3')),
    'TEST_SIZE': int(os.getenv('NETLOAD_TEST_SIZE', '30')),
    'SEED': int(os.getenv('NETLOAD_SEED', '42')),
    'WORKLOAD': os.getenv('NETLOAD_WORKLOAD', 'wordcount-like'),
    'NUM_NODES': int(os.getenv('NETLOAD_NUM_NODES', '5')),
    'PLACEMENT': os.getenv('NETLOAD_PLACEMENT', 'round-robin'),
    'WORKERS': int(os.getenv('NETLOAD_WORKERS', '1')),
}
