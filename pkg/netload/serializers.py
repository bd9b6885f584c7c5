from rest_framework import serializers

from .models import ShuffleModel
from . import simulator


class ShuffleModelListSerializer(serializers.ModelSerializer):
    """Lightweight serializer for model lists (no document)."""

    class Meta:
        model = ShuffleModel
        fields = ['id', 'name', 'workload', 'degree', 'num_params', 'created_at']


class ShuffleModelSerializer(serializers.ModelSerializer):
    """Registered model with its coefficients and fit diagnostics."""
    coefficients = serializers.SerializerMethodField()
    param_names = serializers.SerializerMethodField()

    class Meta:
        model = ShuffleModel
        fields = [
            'id',
            'name',
            'workload',
            'degree',
            'num_params',
            'param_names',
            'coefficients',
            'training_size',
            'rss',
            'condition_number',
            'created_at',
        ]

    def get_coefficients(self, obj):
        return list(obj.to_polynomial().coefficients)

    def get_param_names(self, obj):
        return list(obj.to_polynomial().param_names)


class PredictRequestSerializer(serializers.Serializer):
    maps = serializers.IntegerField(min_value=1)
    reduces = serializers.IntegerField(min_value=1)


class MetricsRequestSerializer(serializers.Serializer):
    actual = serializers.ListField(child=serializers.FloatField(), allow_empty=False)
    predicted = serializers.ListField(child=serializers.FloatField(), allow_empty=False)

    def validate(self, attrs):
        if len(attrs['actual']) != len(attrs['predicted']):
            raise serializers.ValidationError('actual and predicted must have the same length')
        return attrs


# ---------------- CONFIG FILES ----------------

class ClusterSpecSerializer(serializers.Serializer):
    num_nodes = serializers.IntegerField(min_value=1)
    placement = serializers.ChoiceField(choices=simulator.PLACEMENTS, default=simulator.ROUND_ROBIN)
    rack_map = serializers.DictField(child=serializers.CharField(), required=False, allow_null=True)
    cross_rack_weight = serializers.FloatField(min_value=1.0, default=1.0)

    def validate_rack_map(self, value):
        """JSON object keys are strings; nodes are integer indices."""
        if value is None:
            return None
        try:
            return {int(node): rack for node, rack in value.items()}
        except ValueError:
            raise serializers.ValidationError('rack_map keys must be node indices')

    def validate(self, attrs):
        rack_map = attrs.get('rack_map')
        if rack_map is not None:
            missing = [n for n in range(attrs['num_nodes']) if n not in rack_map]
            if missing:
                raise serializers.ValidationError({'rack_map': f"missing nodes {missing}"})
        return attrs


class WorkloadProfileSerializer(serializers.Serializer):
    name = serializers.CharField(max_length=100)
    input_bytes = serializers.IntegerField(min_value=1)
    map_output_ratio = serializers.FloatField(default=1.0)
    partition_skew = serializers.FloatField(min_value=0.0, default=0.0)
    per_pair_overhead_bytes = serializers.FloatField(min_value=0.0, default=simulator.DEFAULT_PAIR_OVERHEAD)
    noise_sigma = serializers.FloatField(min_value=0.0, default=simulator.DEFAULT_NOISE_SIGMA)

    def validate_map_output_ratio(self, value):
        if value <= 0:
            raise serializers.ValidationError('map_output_ratio must be positive')
        return value

    def validate_noise_sigma(self, value):
        if value >= 1:
            raise serializers.ValidationError('noise_sigma must be below 1')
        return value
