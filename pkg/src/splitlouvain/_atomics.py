"""Lock-free primitives for numba kernels running on several threads.

numba exposes no CPU atomics, so these intrinsics emit LLVM ``atomicrmw`` and
``cmpxchg`` instructions directly on an array element.  All return the value
held *before* the operation.
"""

from numba import types
from numba.core import cgutils
from numba.extending import intrinsic


def _element_pointer(context, builder, aryty, ary, idx):
    ary = context.make_array(aryty)(context, builder, ary)
    return cgutils.get_item_pointer(context, builder, aryty, ary, [idx])


@intrinsic
def atomic_add(typingctx, arr, idx, val):
    """``arr[idx] += val`` atomically (integer or float arrays)."""
    if not isinstance(arr, types.Array):
        return None
    sig = arr.dtype(arr, idx, val)

    def codegen(context, builder, signature, args):
        aryty, idxty, valty = signature.args
        ary, i, v = args
        ptr = _element_pointer(context, builder, aryty, ary, i)
        v = context.cast(builder, v, valty, aryty.dtype)
        op = "fadd" if isinstance(aryty.dtype, types.Float) else "add"
        return builder.atomic_rmw(op, ptr, v, "monotonic")

    return sig, codegen


@intrinsic
def atomic_cas(typingctx, arr, idx, expected, new):
    """Compare-and-swap ``arr[idx]``; succeeded iff the result equals ``expected``."""
    if not isinstance(arr, types.Array) or not isinstance(arr.dtype, types.Integer):
        return None
    sig = arr.dtype(arr, idx, expected, new)

    def codegen(context, builder, signature, args):
        aryty, _, ety, nty = signature.args
        ary, i, e, n = args
        ptr = _element_pointer(context, builder, aryty, ary, i)
        e = context.cast(builder, e, ety, aryty.dtype)
        n = context.cast(builder, n, nty, aryty.dtype)
        res = builder.cmpxchg(ptr, e, n, "seq_cst", "seq_cst")
        return builder.extract_value(res, 0)

    return sig, codegen


@intrinsic
def atomic_xchg(typingctx, arr, idx, val):
    """Store ``val`` into ``arr[idx]`` with a full barrier."""
    if not isinstance(arr, types.Array) or not isinstance(arr.dtype, types.Integer):
        return None
    sig = arr.dtype(arr, idx, val)

    def codegen(context, builder, signature, args):
        aryty, _, valty = signature.args
        ary, i, v = args
        ptr = _element_pointer(context, builder, aryty, ary, i)
        v = context.cast(builder, v, valty, aryty.dtype)
        return builder.atomic_rmw("xchg", ptr, v, "seq_cst")

    return sig, codegen
