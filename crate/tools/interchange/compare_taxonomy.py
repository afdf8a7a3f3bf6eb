import re, sys, itertools
dot = open(sys.argv[1]).read()
labels = {m.group(1): [x.strip() for x in m.group(2).split(' = ')] for m in re.finditer(r'(n\d+) \[label="([^"]*)"\]', dot)}
edges = re.findall(r'(n\d+) -> (n\d+)', dot)
ours = set()
up = {}
for a, b in edges: up.setdefault(a, set()).add(b)
def anc(n, seen=None):
    seen = seen if seen is not None else set()
    for p in up.get(n, ()):
        if p not in seen: seen.add(p); anc(p, seen)
    return seen
for n, names in labels.items():
    for x, y in itertools.permutations(names, 2): ours.add((x, y))
    for p in anc(n):
        for x in names:
            for y in labels[p]: ours.add((x, y))
ours = {(x, y) for x, y in ours if x not in ('top', 'bot') and y not in ('top', 'bot')}
ns = 'http://example.org/defectont#'
her_up = {}
for line in open(sys.argv[2]):
    names = [n.replace(ns, '') for n in re.findall(r'<([^>]*)>', line)]
    if line.startswith('SubClassOf'): her_up.setdefault(names[0], set()).add(names[1])
    elif line.startswith('EquivalentClasses'):
        for x, y in itertools.permutations(names, 2): her_up.setdefault(x, set()).add(y)
def hanc(n):
    seen, todo = set(), [n]
    while todo:
        for p in her_up.get(todo.pop(), ()):
            if p not in seen: seen.add(p); todo.append(p)
    return seen
thing = 'http://www.w3.org/2002/07/owl#Thing'
hermit = {(x, y) for x in her_up for y in hanc(x) if x != y and thing not in (x, y)}
print(f"ours {len(ours)} strict subsumption pairs, hermit {len(hermit)}")
print("only ours:", sorted(ours - hermit)[:10])
print("only hermit:", sorted(hermit - ours)[:10])
print("identical" if ours == hermit else "DIFFERENT")
