from hypothesis import strategies as st

rationals = st.fractions(min_value=0, max_value=50, max_denominator=60)
bid_lists = st.lists(rationals, min_size=1, max_size=8)
