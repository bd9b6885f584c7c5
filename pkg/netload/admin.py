from django.contrib import admin
from .models import ShuffleModel


@admin.register(ShuffleModel)
class ShuffleModelAdmin(admin.ModelAdmin):
    list_display = ('id', 'name', 'workload', 'degree', 'training_size', 'created_at')
    search_fields = ('name', 'workload')
    list_filter = ('workload', 'degree')
    readonly_fields = ('created_at',)
