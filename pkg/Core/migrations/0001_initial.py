import django.db.models.deletion
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='EmbeddedMatrix',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('slug', models.CharField(max_length=60, unique=True)),
                ('q', models.PositiveSmallIntegerField()),
                ('k', models.PositiveSmallIntegerField()),
                ('n', models.PositiveIntegerField()),
                ('digits', models.TextField(help_text='One line of n digits per row.')),
            ],
            options={
                'ordering': ['slug'],
            },
        ),
        migrations.CreateModel(
            name='OracleEntry',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('q', models.PositiveSmallIntegerField()),
                ('n', models.PositiveIntegerField()),
                ('k', models.PositiveSmallIntegerField()),
                ('d', models.PositiveIntegerField()),
                ('exact', models.BooleanField(default=True)),
            ],
            options={
                'ordering': ['q', 'k', 'n'],
                'unique_together': {('q', 'n', 'k')},
            },
        ),
        migrations.CreateModel(
            name='SearchRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('q', models.PositiveSmallIntegerField()),
                ('K', models.PositiveSmallIntegerField()),
                ('r', models.PositiveSmallIntegerField()),
                ('w', models.PositiveIntegerField()),
                ('point_cap', models.PositiveIntegerField(blank=True, null=True)),
                ('prescribed_frame', models.BooleanField(default=False)),
                ('prescription', models.TextField(blank=True)),
                ('best_n', models.PositiveIntegerField()),
                ('status', models.CharField(choices=[('optimal', 'Optimal'), ('feasible-only', 'Feasible only')], max_length=20)),
                ('proved_by', models.CharField(blank=True, max_length=20)),
                ('root_bound', models.PositiveIntegerField(blank=True, null=True)),
                ('nodes', models.BigIntegerField(default=0)),
                ('seconds', models.FloatField(default=0)),
                ('witness', models.TextField(blank=True)),
                ('log', models.TextField(blank=True)),
                ('created', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'ordering': ['-created'],
            },
        ),
        migrations.CreateModel(
            name='TableEntry',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('q', models.PositiveSmallIntegerField()),
                ('K', models.PositiveSmallIntegerField()),
                ('r', models.PositiveSmallIntegerField()),
                ('w', models.PositiveIntegerField()),
                ('value_lo', models.PositiveIntegerField()),
                ('value_hi', models.PositiveIntegerField()),
                ('construction', models.CharField(max_length=120)),
                ('bound_source', models.CharField(max_length=60)),
                ('note', models.CharField(blank=True, max_length=255)),
                ('search_proved', models.BooleanField(default=False)),
                ('search_relies_on_prescription', models.BooleanField(default=False)),
            ],
            options={
                'ordering': ['q', 'K', 'r', 'w'],
                'unique_together': {('q', 'K', 'r', 'w')},
            },
        ),
        migrations.CreateModel(
            name='VerificationRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('only', models.CharField(blank=True, max_length=60)),
                ('ok', models.BooleanField(default=False)),
                ('entries_checked', models.PositiveIntegerField(default=0)),
                ('matrices_checked', models.PositiveIntegerField(default=0)),
                ('created', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'ordering': ['-created'],
            },
        ),
        migrations.CreateModel(
            name='MatrixClaim',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('r', models.PositiveSmallIntegerField()),
                ('w', models.PositiveIntegerField()),
                ('n', models.PositiveIntegerField()),
                ('status', models.CharField(choices=[('ok', 'Holds'), ('known-discrepancy', 'Known discrepancy')], default='ok', max_length=20)),
                ('note', models.TextField(blank=True)),
                ('matrix', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='claims', to='Core.embeddedmatrix')),
            ],
            options={
                'ordering': ['matrix__slug', 'r', 'w'],
                'unique_together': {('matrix', 'r', 'w')},
            },
        ),
        migrations.CreateModel(
            name='VerificationItem',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('kind', models.CharField(choices=[('entry', 'Table entry'), ('matrix', 'Matrix claim')], max_length=10)),
                ('label', models.CharField(max_length=80)),
                ('status', models.CharField(max_length=30)),
                ('detail', models.TextField(blank=True)),
                ('run', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='items', to='Core.verificationrun')),
            ],
            options={
                'ordering': ['run', 'kind', 'label'],
            },
        ),
    ]
