from django.db import models

from . import regression


class ShuffleModel(models.Model):
    """A fitted shuffle-load model registered for provisioning queries."""
    name = models.CharField(max_length=255, unique=True)
    workload = models.CharField(max_length=100, blank=True, db_index=True)
    degree = models.PositiveSmallIntegerField()
    num_params = models.PositiveSmallIntegerField(default=2)
    document = models.TextField(help_text='Versioned JSON model document')
    training_size = models.PositiveIntegerField(null=True, blank=True)
    rss = models.FloatField(null=True, blank=True)
    condition_number = models.FloatField(null=True, blank=True)
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ['name']

    def __str__(self):
        return f"{self.name} (degree {self.degree})"

    def to_polynomial(self):
        return regression.load_model(self.document)

    @classmethod
    def register(cls, name, model, workload=''):
        meta = model.fit_meta
        obj, _ = cls.objects.update_or_create(
            name=name,
            defaults={
                'workload': workload,
                'degree': model.degree,
                'num_params': model.num_params,
                'document': regression.save_model(model, workload=workload),
                'training_size': meta.training_size if meta else None,
                'rss': meta.rss if meta else None,
                'condition_number': meta.condition_number if meta else None,
            },
        )
        return obj
