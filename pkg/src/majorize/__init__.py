"""Exact majorization, symmetric means, Muirhead and Rado inequalities."""
from .chains import (BirkhoffDecomposition, DoublyStochastic, MajorizationChain, TransferStep,
                     birkhoff_decompose, build_chain, hlp_matrix, step_to_ttransform)
from .core import (MajorizationVerdict, Relation, RVector, decreasing_rearrangement,
                   hamming_distance, is_constant, is_nonnegative, is_positive, majorizes)
from .errors import InputError, InvariantError, MajorizeError
from .hull import (MembershipCertificate, SeparationCertificate, membership,
                   membership_via_majorization, orbit)
from .means import (MeanValue, Mode, Order, amgm_certificate, compare_means, monomial_eval,
                    symmetric_mean)
from .multiplicative import (Augmentation, MultiplicativePair, augment, check_prefix_products,
                             sum_dominance)
from .perms import (PermGroup, Permutation, act_on_vector, compose, full_symmetric_group,
                    generate_group, inverse, parse_cycles)
from .rado import (RadoWitness, build_rado_witness, probe_constant, probe_step_vectors)

__version__ = "0.1.0"
