from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='ShuffleModel',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('name', models.CharField(max_length=255, unique=True)),
                ('workload', models.CharField(blank=True, db_index=True, max_length=100)),
                ('degree', models.PositiveSmallIntegerField()),
                ('num_params', models.PositiveSmallIntegerField(default=2)),
                ('document', models.TextField(help_text='Versioned JSON model document')),
                ('training_size', models.PositiveIntegerField(blank=True, null=True)),
                ('rss', models.FloatField(blank=True, null=True)),
                ('condition_number', models.FloatField(blank=True, null=True)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'ordering': ['name'],
            },
        ),
    ]
