"""Independent reference implementations used to cross-check the package.

Everything in this file was written against the math directly, before the
main library, and deliberately avoids importing from it.  Values are plain
ints (with an explicit modulus) or fractions.Fraction, never library types.
"""

from fractions import Fraction


def longdiv_oracle(num, den, modulus=None):
    """Brute-force polynomial long division, highest degree first.

    num, den: ascending coefficient lists of ints or Fractions.
    Returns (quotient, remainder) as ascending lists, remainder padded with
    nothing (trailing zeros stripped).  modulus=None means exact rationals.
    """

    def strip(xs):
        xs = list(xs)
        while xs and xs[-1] == 0:
            xs.pop()
        return xs

    den = strip(den)
    if not den:
        raise ZeroDivisionError("division by zero polynomial")
    rem = strip(num)
    quot = [0] * max(len(rem) - len(den) + 1, 0)
    if modulus is None:
        lead_inv = Fraction(1, 1) / Fraction(den[-1])
    else:
        lead_inv = pow(den[-1] % modulus, -1, modulus)
    while len(rem) >= len(den):
        shift = len(rem) - len(den)
        factor = rem[-1] * lead_inv
        if modulus is not None:
            factor %= modulus
        quot[shift] = factor
        for i, dc in enumerate(den):
            rem[shift + i] = rem[shift + i] - factor * dc
            if modulus is not None:
                rem[shift + i] %= modulus
        rem = strip(rem)
    return quot, rem


def dot_oracle(v, w, k, t, modulus=None):
    """(t.v)*(t.w) - (t.k) computed directly from one constraint row."""
    tv = sum(a * b for a, b in zip(t, v))
    tw = sum(a * b for a, b in zip(t, w))
    tk = sum(a * b for a, b in zip(t, k))
    out = tv * tw - tk
    if modulus is not None:
        out %= modulus
    return out


def r1cs_satisfied_oracle(rows, t, modulus=None):
    """rows: iterable of (v, w, k) coefficient lists."""
    return all(dot_oracle(v, w, k, t, modulus) == 0 for v, w, k in rows)


def interp_eval_oracle(points, x, modulus=None):
    """Evaluate the interpolating polynomial at x via the barycentric-free
    textbook Lagrange sum, without ever materialising coefficients."""
    total = 0
    for i, (xi, yi) in enumerate(points):
        term = yi
        for j, (xj, _) in enumerate(points):
            if i == j:
                continue
            if modulus is None:
                term = term * Fraction(x - xj, xi - xj)
            else:
                term = term * (x - xj) * pow((xi - xj) % modulus, -1, modulus) % modulus
        total = total + term
        if modulus is not None:
            total %= modulus
    return total


def mimc_oracle(inputs, modulus, rounds=11, exponent=3):
    """Reference sponge: state=0; absorb each m with an 11-round cube chain.

    Round constants are 1..rounds.  Written as one literal loop so the main
    implementation can be checked against it.
    """
    if not inputs:
        raise ValueError("empty input")
    state = 0
    for m in inputs:
        x = (state + m) % modulus
        for c in range(1, rounds + 1):
            x = pow(x + c, exponent, modulus)
        state = x
    return state


class AstInterpError(Exception):
    pass


def interpret_source_oracle(source, x, modulus=None):
    """Directly interpret the mini language on an input value.

    Independent of the package's parser/flattener: a tiny recursive-descent
    evaluator over the raw text.  Supports the same grammar: one def with a
    single parameter, assignments, +, -, *, ** with integer-literal exponent,
    parentheses, integer literals, and a final return.
    """
    lines = [ln.strip() for ln in source.strip().splitlines()]
    lines = [ln for ln in lines if ln]
    head = lines[0]
    if not head.startswith("def"):
        raise AstInterpError("expected def")
    param = head[head.index("(") + 1 : head.index(")")].strip()
    rest = head[head.index(":") + 1 :].strip()
    body = ([rest] if rest else []) + lines[1:]

    env = {param: x}

    def reduce_mod(val):
        return val % modulus if modulus is not None else val

    def tokenize(text):
        toks, i = [], 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif text.startswith("**", i):
                toks.append("**")
                i += 2
            elif ch in "+-*()":
                toks.append(ch)
                i += 1
            elif ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                toks.append(int(text[i:j]))
                i = j
            elif ch.isalpha() or ch == "_":
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                toks.append(text[i:j])
                i = j
            else:
                raise AstInterpError(f"bad char {ch!r}")
        return toks

    def parse_expr(toks, pos):
        val, pos = parse_term(toks, pos)
        while pos < len(toks) and toks[pos] in ("+", "-"):
            op = toks[pos]
            rhs, pos = parse_term(toks, pos + 1)
            val = reduce_mod(val + rhs if op == "+" else val - rhs)
        return val, pos

    def parse_term(toks, pos):
        val, pos = parse_factor(toks, pos)
        while pos < len(toks) and toks[pos] == "*":
            rhs, pos = parse_factor(toks, pos + 1)
            val = reduce_mod(val * rhs)
        return val, pos

    def parse_factor(toks, pos):
        val, pos = parse_atom(toks, pos)
        if pos < len(toks) and toks[pos] == "**":
            exp = toks[pos + 1]
            if not isinstance(exp, int):
                raise AstInterpError("exponent must be a literal")
            val = reduce_mod(val**exp)
            pos += 2
        return val, pos

    def parse_atom(toks, pos):
        tok = toks[pos]
        if isinstance(tok, int):
            return reduce_mod(tok), pos + 1
        if tok == "(":
            val, pos = parse_expr(toks, pos + 1)
            if toks[pos] != ")":
                raise AstInterpError("expected )")
            return val, pos + 1
        if isinstance(tok, str) and tok not in ("+", "-", "*", "**", ")"):
            if tok not in env:
                raise AstInterpError(f"undefined variable {tok}")
            return env[tok], pos + 1
        raise AstInterpError(f"unexpected token {tok!r}")

    def eval_text(text):
        toks = tokenize(text)
        val, pos = parse_expr(toks, 0)
        if pos != len(toks):
            raise AstInterpError("trailing tokens")
        return val

    for ln in body:
        if ln.startswith("return"):
            return eval_text(ln[len("return") :])
        target, _, expr = ln.partition("=")
        target = target.strip()
        if target in env:
            raise AstInterpError(f"reassignment of {target}")
        env[target] = eval_text(expr)
    raise AstInterpError("no return statement")
