import logging

from django.template.defaultfilters import filesizeformat

from rest_framework.decorators import api_view
from rest_framework.response import Response

from .domain import ParameterVector
from .exceptions import NetloadError
from .filters import ShuffleModelFilter
from .models import ShuffleModel
from .serializers import (
    MetricsRequestSerializer,
    PredictRequestSerializer,
    ShuffleModelListSerializer,
    ShuffleModelSerializer,
)
from . import metrics, regression

logger = logging.getLogger(__name__)


# ---------------- MODEL REGISTRY ----------------
@api_view(['GET'])
def models_list(request):
    queryset = ShuffleModelFilter(request.GET, queryset=ShuffleModel.objects.all()).qs
    return Response(ShuffleModelListSerializer(queryset[:100], many=True).data)


@api_view(['GET'])
def model_detail(request, pk):
    try:
        model = ShuffleModel.objects.get(pk=pk)
    except ShuffleModel.DoesNotExist:
        return Response({'error': 'Model not found'}, status=404)
    try:
        return Response(ShuffleModelSerializer(model).data)
    except NetloadError as exc:
        logger.error("stored document of model %s is unreadable: %s", pk, exc)
        return Response({'error': f'Stored model document is invalid: {exc}'}, status=500)


# ---------------- PROVISIONING ----------------
@api_view(['POST'])
def model_predict(request, pk):
    try:
        stored = ShuffleModel.objects.get(pk=pk)
    except ShuffleModel.DoesNotExist:
        return Response({'error': 'Model not found'}, status=404)

    serializer = PredictRequestSerializer(data=request.data)
    if not serializer.is_valid():
        return Response(serializer.errors, status=400)

    config = ParameterVector((serializer.validated_data['maps'], serializer.validated_data['reduces']))
    try:
        load = regression.predict(stored.to_polynomial(), config)
    except NetloadError as exc:
        return Response({'error': str(exc)}, status=400)

    return Response({
        'model': stored.name,
        'maps': config.maps,
        'reduces': config.reduces,
        'load_bytes': load,
        'human': filesizeformat(load),
    })


@api_view(['POST'])
def metrics_view(request):
    serializer = MetricsRequestSerializer(data=request.data)
    if not serializer.is_valid():
        return Response(serializer.errors, status=400)

    actual = serializer.validated_data['actual']
    predicted = serializer.validated_data['predicted']
    result = {'m': len(actual), 'rmse': metrics.rmse(actual, predicted)}
    try:
        result['mape'] = metrics.mape(actual, predicted)
        result['pred25'] = metrics.pred25(actual, predicted)
    except NetloadError as exc:
        return Response({'error': str(exc)}, status=400)
    try:
        result['r_squared'] = metrics.r_squared(actual, predicted)
    except NetloadError:
        # undefined for constant actual loads
        result['r_squared'] = None
    return Response(result)
