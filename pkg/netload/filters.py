import django_filters

from .models import ShuffleModel


class ShuffleModelFilter(django_filters.FilterSet):
    workload = django_filters.CharFilter(field_name='workload')
    name = django_filters.CharFilter(field_name='name', lookup_expr='icontains')
    degree = django_filters.NumberFilter(field_name='degree')

    class Meta:
        model = ShuffleModel
        fields = ['workload', 'name', 'degree']
