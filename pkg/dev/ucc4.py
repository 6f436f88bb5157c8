exec(open('/root/pkg/dev/ucc3.py').read().split("import sys")[0])
for variant in (dict(skip_seam=False), dict(skip_seam=True)):
    r = residuals("UfU+", +1, project=True, **variant)
    print("projected", variant, {k: round(v,8) for k,v in r.items()}, flush=True)
