#!/usr/bin/env python3
"""Regenerates java200.jsonl, the 200-method fixture corpus.

Id prefixes mark the shapes the tests look for:
  straight_   no control flow
  ifelse2r_   body is exactly `if (...) { return ..; } else { return ..; }`
  trycatch_   catch bodies call catchMarkerN(), which appears nowhere else
"""
import json
import random
import sys

rng = random.Random(20240611)

NAMES = ["count", "total", "value", "index", "buffer", "result", "name", "size",
         "offset", "limit", "item", "node", "key", "score", "flag", "text"]
CALLS = ["process", "update", "log", "emit", "store", "check", "notifyAll2",
         "validate", "flush", "render"]


def ident(prefix=""):
    n = rng.choice(NAMES)
    return prefix + n[0].upper() + n[1:] if prefix else n


def literal(t):
    if t in ("int", "long"):
        return str(rng.randint(0, 99))
    if t == "double":
        return "%d.%d" % (rng.randint(0, 9), rng.randint(0, 9))
    if t == "boolean":
        return rng.choice(["true", "false"])
    return json.dumps(rng.choice(["ok", "a b", "x\\ty", "quote\"d", ""]))


def simple_stmt(vars_):
    k = rng.randrange(6)
    v = rng.choice(vars_)
    if k == 0:
        return "%s(%s);" % (rng.choice(CALLS), v)
    if k == 1:
        return "%s = %s + %d;" % (v, v, rng.randint(1, 9))
    if k == 2:
        return "this.%s = %s;" % (ident(), v)
    if k == 3:
        return "System.out.println(\"%s=\" + %s);" % (v, v)
    if k == 4:
        return "%s.%s(%s, %d);" % (ident(), rng.choice(CALLS), v, rng.randint(0, 5))
    return "%s++;" % v


def params():
    n = rng.randint(0, 3)
    ps = []
    used = set()
    for _ in range(n):
        name = ident()
        if name in used:
            continue
        used.add(name)
        ps.append(("int", name))
    return ps


def header(ret, name, ps, mods="public"):
    return "%s %s %s(%s)" % (mods, ret, name, ", ".join("%s %s" % p for p in ps))


def straight(i):
    ps = params() or [("int", "seed")]
    vs = [p[1] for p in ps]
    body = []
    local = "tmp%d" % i
    body.append("int %s = %s * 2;" % (local, vs[0]))
    vs.append(local)
    for _ in range(rng.randint(1, 5)):
        body.append(simple_stmt(vs))
    ret = rng.choice(["void", "int"])
    if ret == "int":
        body.append("return %s;" % rng.choice(vs))
    return "%s {\n  %s\n}" % (header(ret, "straight%d" % i, ps), "\n  ".join(body))


def ifelse_two_return(i):
    t = rng.choice(["int", "String", "boolean"])
    ps = [("int", "x")]
    return ("%s {\n  if (x > %d) {\n    return %s;\n  } else {\n    return %s;\n  }\n}"
            % (header(t, "pick%d" % i, ps), rng.randint(0, 50), literal(t), literal(t)))


def trycatch(i):
    vs = ["input%d" % i]
    tried = "\n    ".join(simple_stmt(vs) for _ in range(rng.randint(1, 3)))
    catches = [(rng.choice(["IOException", "IllegalStateException", "Exception"]), "")]
    if rng.random() < 0.4:
        catches.insert(0, ("Error", "x"))
    parts = ["%s {" % header("void", "guarded%d" % i, [("int", vs[0])]),
             "  " + simple_stmt(vs),
             "  try {",
             "    " + tried]
    for exc, suffix in catches:
        parts.append("  } catch (%s e) {" % exc)
        parts.append("    catchMarker%d%s(e);" % (i, suffix))
    if rng.random() < 0.5:
        parts.append("  } finally {")
        parts.append("    release(%s);" % vs[0])
    parts.append("  }")
    parts.append("  " + simple_stmt(vs))
    parts.append("}")
    return "\n".join(parts)


def loop(i):
    v = "n%d" % i
    kind = rng.randrange(4)
    inner = simple_stmt([v, "acc"])
    if kind == 0:
        loop_src = "while (%s > 0) {\n    %s\n    %s--;\n  }" % (v, inner, v)
    elif kind == 1:
        loop_src = ("for (int k = 0; k < %s; k++) {\n    if (k %% 3 == 0) continue;\n"
                    "    %s\n    if (acc > 100) break;\n  }" % (v, inner))
    elif kind == 2:
        loop_src = "for (int e : items) {\n    acc += e;\n    %s\n  }" % inner
    else:
        loop_src = "do {\n    %s\n    %s -= 2;\n  } while (%s > 0);" % (inner, v, v)
    return ("%s {\n  int acc = 0;\n  %s\n  return acc;\n}"
            % (header("int", "loop%d" % i, [("int", v), ("int[]", "items")]), loop_src))


def switch(i):
    v = "c%d" % i
    if rng.random() < 0.3:
        arms = "\n".join("    case %d -> %s" % (k, simple_stmt([v])) for k in range(rng.randint(1, 3)))
        arms += "\n    default -> log(%s);" % v
        return "%s {\n  switch (%s) {\n%s\n  }\n}" % (header("void", "arrow%d" % i, [("int", v)]), v, arms)
    groups = []
    for k in range(rng.randint(1, 4)):
        g = "    case %d:\n      %s" % (k, simple_stmt([v]))
        if rng.random() < 0.7:
            g += "\n      break;"
        groups.append(g)
    if rng.random() < 0.6:
        groups.append("    default:\n      %s" % simple_stmt([v]))
    return ("%s {\n  switch (%s) {\n%s\n  }\n  emit(%s);\n}"
            % (header("void", "sw%d" % i, [("int", v)]), v, "\n".join(groups), v))


MISC = [
    lambda i: "/** Doc %d. */\n@Override\npublic String toString() {\n  // trailing comment\n  return \"Obj\" + id%d;\n}" % (i, i),
    lambda i: "Holder%d(int size) {\n  super(size);\n  this.size = size;\n}" % i,
    lambda i: "static <T extends Comparable<T>> T max%d(T a, T b) {\n  return a.compareTo(b) >= 0 ? a : b;\n}" % i,
    lambda i: "void sync%d() {\n  synchronized (lock) {\n    counter++;\n  }\n  notifyAll();\n}" % i,
    lambda i: "String read%d(String path) throws IOException {\n  try (BufferedReader r = new BufferedReader(new FileReader(path))) {\n    return r.readLine();\n  }\n}" % i,
    lambda i: "void lambda%d(List<String> xs) {\n  xs.forEach(x -> {\n    if (x.isEmpty()) return;\n    System.out.println(x);\n  });\n}" % i,
    lambda i: "int nested%d(int a, int b) {\n  if (a > b) {\n    if (a > 10) {\n      return a;\n    }\n    b = a;\n  } else if (b > 10) {\n    a = b;\n  }\n  return a + b;\n}" % i,
    lambda i: "void labeled%d(int[][] grid) {\n  outer:\n  for (int[] row : grid) {\n    for (int c : row) {\n      if (c < 0) continue outer;\n      if (c == 0) break outer;\n      total += c;\n    }\n  }\n}" % i,
    lambda i: "char first%d(String s) {\n  char c = s.isEmpty() ? '\\n' : s.charAt(0);\n  int[] arr = new int[] {1, 2, 3};\n  return c;\n}" % i,
    lambda i: "Runnable make%d() {\n  return new Runnable() {\n    public void run() {\n      work();\n    }\n  };\n}" % i,
    lambda i: "void thrower%d(int v) {\n  if (v < 0) {\n    throw new IllegalArgumentException(\"neg\");\n  }\n  use(v);\n}" % i,
    lambda i: "int broken%d(int a) {\n  int b = a +;\n  return b;\n}" % i,
]


def main(out):
    records = []
    counts = [("straight", 50, straight), ("ifelse2r", 10, ifelse_two_return),
              ("trycatch", 30, trycatch), ("loop", 40, loop), ("switch", 25, switch)]
    for prefix, n, fn in counts:
        for i in range(n):
            records.append({"id": "%s_%03d" % (prefix, i), "code": fn(i)})
    for i in range(45):
        records.append({"id": "misc_%03d" % i, "code": MISC[i % len(MISC)](i)})
    assert len(records) == 200
    with open(out, "w", encoding="utf-8") as f:
        for r in records:
            f.write(json.dumps(r, ensure_ascii=False, sort_keys=True) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "java200.jsonl")
