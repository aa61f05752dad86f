"""Reference product matrices written out by hand, in the CLI word syntax.

The 14x14 matrix is stored in its compact block form; ``expand_blocks``
turns a cell like ``t*alpha(alpha',beta',gamma')`` into the row segment
``t*alpha*alpha', t*alpha*beta', t*alpha*gamma'``.
"""

C2_FREE_C2 = [
    ["1", "sigma", "tau"],
    ["sigma", "1", "sigma*tau"],
    ["tau", "tau*sigma", "1"],
]

# rho = (1, sigma, tau, gamma, t, t*sigma, t*tau, t*gamma)
KLEIN_HNN = [
    ["1", "sigma", "tau", "gamma", "t", "t*sigma", "t*tau", "t*gamma"],
    ["sigma", "1", "gamma", "tau", "t*tau", "t*gamma", "t", "t*sigma"],
    ["tau", "gamma", "1", "sigma", "tau*t", "tau*t*sigma", "tau*t*tau", "tau*t*gamma"],
    ["gamma", "tau", "sigma", "1", "tau*t*tau", "tau*t*gamma", "tau*t", "tau*t*sigma"],
    ["t", "t*sigma", "t*tau", "t*gamma", "t^2", "t^2*sigma", "t^2*tau", "t^2*gamma"],
    ["t*sigma", "t", "t*gamma", "t*tau", "t^2*tau", "t^2*gamma", "t^2", "t^2*sigma"],
    ["t*tau", "t*gamma", "t", "t*sigma", "t*tau*t", "t*tau*t*sigma", "t*tau*t*tau", "t*tau*t*gamma"],
    ["t*gamma", "t*tau", "t*sigma", "t", "t*tau*t*tau", "t*tau*t*gamma", "t*tau*t", "t*tau*t*sigma"],
]

# rho = (sigma^-1, 1, sigma, sigma^-1*tau, tau, sigma*tau)
DINFINITY = [
    ["sigma^-2", "sigma^-1", "1", "sigma^-2*tau", "sigma^-1*tau", "tau"],
    ["sigma^-1", "1", "sigma", "sigma^-1*tau", "tau", "sigma*tau"],
    ["1", "sigma", "sigma^2", "tau", "sigma*tau", "sigma^2*tau"],
    ["tau", "sigma^-1*tau", "sigma^-2*tau", "1", "sigma^-1", "sigma^-2"],
    ["sigma*tau", "tau", "sigma^-1*tau", "sigma", "1", "sigma^-1"],
    ["sigma^2*tau", "sigma*tau", "tau", "sigma^2", "sigma", "1"],
]

_A = "(alpha,beta,gamma)"
_B = "(alpha',beta',gamma')"
C4_C4_HNN_BLOCKS = [
    ["(1,alpha,beta,gamma)", _B, "t", "t" + _A, "t" + _B],
    ["(alpha,beta,gamma,1)", "alpha" + _B, "alpha*t", "alpha*t" + _A, "alpha*t" + _B],
    ["(beta,gamma,1,alpha)", "beta" + _B, "t*beta'", "t*beta'" + _A, "t(gamma',1,alpha')"],
    ["(gamma,1,alpha,beta)", "gamma" + _B, "alpha*t*beta'", "alpha*t*beta'" + _A, "alpha*t(gamma',1,alpha')"],
    ["alpha'(1,alpha,beta,gamma)", "(beta',gamma',1)", "alpha'*t", "alpha'*t" + _A, "alpha'*t" + _B],
    ["beta'(1,alpha,beta,gamma)", "(gamma',1,alpha')", "beta'*t", "beta'*t" + _A, "beta'*t" + _B],
    ["gamma'(1,alpha,beta,gamma)", "(1,alpha',beta')", "gamma'*t", "gamma'*t" + _A, "gamma'*t" + _B],
    ["t(1,alpha,beta,gamma)", "t" + _B, "t^2", "t^2" + _A, "t^2" + _B],
    ["t(alpha,beta,gamma,1)", "t*alpha" + _B, "t*alpha*t", "t*alpha*t" + _A, "t*alpha*t" + _B],
    ["t(beta,gamma,1,alpha)", "t*beta" + _B, "t^2*beta'", "t^2*beta'" + _A, "t^2(gamma',1,alpha')"],
    ["t(gamma,1,alpha,beta)", "t*gamma" + _B, "t*alpha*t*beta'", "t*alpha*t*beta'" + _A,
     "t*alpha*t(gamma',1,alpha')"],
    ["t*alpha'(1,alpha,beta,gamma)", "t(beta',gamma',1)", "t*alpha'*t", "t*alpha'*t" + _A, "t*alpha'*t" + _B],
    ["t*beta'(1,alpha,beta,gamma)", "t(gamma',1,alpha')", "t*beta'*t", "t*beta'*t" + _A, "t*beta'*t" + _B],
    ["t*gamma'(1,alpha,beta,gamma)", "t(1,alpha',beta')", "t*gamma'*t", "t*gamma'*t" + _A, "t*gamma'*t" + _B],
]


def _cell(text):
    if "(" not in text:
        return [text]
    prefix, rest = text.split("(", 1)
    items = rest.rstrip(")").split(",")
    out = []
    for it in items:
        if not prefix:
            out.append(it)
        elif it == "1":
            out.append(prefix)
        else:
            out.append(f"{prefix}*{it}")
    return out


def expand_blocks(rows):
    return [[w for cell in row for w in _cell(cell)] for row in rows]


C4_C4_HNN = expand_blocks(C4_C4_HNN_BLOCKS)
