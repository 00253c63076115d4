import logging

from django.db.models.signals import post_save
from django.dispatch import receiver

from .models import SearchRun, TableEntry

logger = logging.getLogger(__name__)


@receiver(post_save, sender=SearchRun)
def mark_search_proved(sender, instance, created, **kwargs):
    """Keep the table flags in line with finished searches."""

    if not created or instance.status != "optimal":
        return
    entry = TableEntry.objects.filter(
        q=instance.q, K=instance.K, r=instance.r, w=instance.w
    ).first()
    if entry is None:
        return

    if instance.best_n > entry.value_hi:
        # un testigo mayor que el valor guardado contradice la tabla
        logger.warning(
            "search found %d for %s, above the stored value %s",
            instance.best_n,
            entry,
            entry.value_text,
        )
        return
    if instance.point_cap is not None and instance.point_cap < instance.w:
        # busqueda restringida: no prueba el valor de la tabla
        return
    if instance.best_n < entry.value_lo:
        if not instance.relies_on_prescription:
            logger.warning(
                "search proves %d for %s, below the stored value %s",
                instance.best_n,
                entry,
                entry.value_text,
            )
        return

    if entry.value_kind == "exact" and instance.best_n == entry.value_lo:
        relies = instance.relies_on_prescription
        if entry.search_proved and not entry.search_relies_on_prescription:
            relies = False
        entry.search_proved = True
        entry.search_relies_on_prescription = relies
        entry.save(update_fields=["search_proved", "search_relies_on_prescription"])
