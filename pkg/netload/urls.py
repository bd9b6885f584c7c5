from django.urls import path
from . import views

urlpatterns = [
    # Model registry
    path('models/', views.models_list, name='models-list'),
    path('models/<int:pk>/', views.model_detail, name='model-detail'),

    # Provisioning
    path('models/<int:pk>/predict/', views.model_predict, name='model-predict'),
    path('metrics/', views.metrics_view, name='metrics'),
]
