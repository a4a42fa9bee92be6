from concurrent.futures import ThreadPoolExecutor


def chunked(items, size):
    """Split a sequence into consecutive chunks"""
    return [items[start:start + size] for start in range(0, len(items), size)]


def ordered_map(func, jobs, threads=1):
    """
    Map func over jobs and return results in job order,
    output never depends on the thread count
    """
    jobs = list(jobs)
    if threads <= 1 or len(jobs) <= 1:
        return [func(job) for job in jobs]

    with ThreadPoolExecutor(max_workers=min(threads, len(jobs))) as pool:
        return list(pool.map(func, jobs))
