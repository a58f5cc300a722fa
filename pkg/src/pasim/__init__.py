"""Largest probabilistic alternating simulation on finite probabilistic game structures."""
from .model import Distribution, GameStructure, MixedAction, PGSError, parse_pgs, step_mixed, successor_set
from .orderings import (PartitionPair, initial_partition, lifted_leq, project, up_closure,
                        weight_witness)
from .refine import can_follow, can_sim, gcpp, split
from .oracle import brute_force, check_stability, classic_simulation

__version__ = "0.1.0"
