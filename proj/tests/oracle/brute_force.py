"""Independent brute-force oracle: selection rules and exhaustive impartiality counts on G_n(1)."""
import itertools
import sys
def twin(n, out, T, t):
    indeg=[0]*(n+1)
    for v in range(1,n+1):
        for u in out[v]: indeg[u]+=1
    hat=indeg[:]; d=max(indeg[1:]) if n else 0; deleted=set()
    while d>=t:
        cands=[u for u in range(1,n+1) if u not in deleted and hat[u]==d]
        if not cands: d-=1; continue
        v=max(cands)
        for u in out[v]: hat[u]-=1
        deleted.add(v)
    m=max(hat[1:])
    if m>=T: return max(u for u in range(1,n+1) if hat[u]==m)
    return 0
def sim(n,out,t):
    indeg=[0]*(n+1)
    for v in range(1,n+1):
        for u in out[v]: indeg[u]+=1
    D={v for v in range(1,n+1) if indeg[v]>=t}
    rem=indeg[:]
    for v in D:
        for u in out[v]: rem[u]-=1
    m=max(rem[1:])
    if m>=t+1: return max(u for u in range(1,n+1) if rem[u]==m)
    return 0
def maxnaive(n,out):
    indeg=[0]*(n+1)
    for v in range(1,n+1):
        for u in out[v]: indeg[u]+=1
    m=max(indeg[1:]); return max(u for u in range(1,n+1) if indeg[u]==m)
def audit(n, f):
    choices=[[()]+[(u,) for u in range(1,n+1) if u!=v] for v in range(1,n+1)]
    res={}
    for combo in itertools.product(*choices):
        out=[()]+list(combo); res[combo]=f(n,out)
    viol=0; first=None
    for combo,s in res.items():
        for v in range(1,n+1):
            for c in choices[v-1]:
                c2=list(combo); c2[v-1]=c; c2=tuple(c2)
                if (s==v)!=(res[c2]==v):
                    viol+=1
                    if first is None: first=(combo,c2,v)
    return viol//2, first
def main():
  for n in (4,5,6):
      print(n,'maxnaive',audit(n,maxnaive)[0] if n==4 else '')
      print(n,'iter2',audit(n,lambda n,o:twin(n,o,2,2)))
      print(n,'sim2',audit(n,lambda n,o:sim(n,o,2)))
      sys.stdout.flush()
  print('twin41 n5', audit(5,lambda n,o:twin(n,o,4,1))[0])

if __name__ == '__main__':
    main()
