from django.apps import AppConfig


class NetloadConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'netload'
    verbose_name = 'Shuffle network load'
