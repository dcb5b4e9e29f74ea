# app.py

import streamlit as st
import pandas as pd
import plotly.express as px

from src.config import BUDGETS, CENSUS_DEFAULTS
from src.census.pipeline import CensusConfig, emit_records, run_census
from src.census.summary import census_summary, completeness_report
from src.connectors.csv_output import records_frame
from src.connectors.digraph_files import write_digraph
from src.errors import AtdError, BudgetExceededError

# --- Streamlit Page Configuration ---
st.set_page_config(page_title="2-ATD Census Explorer", page_icon="🔁", layout="wide")

# --- Caching Functions for Performance ---
@st.cache_data(show_spinner=False)
def run_full_pipeline(m, s_max, index_cap, gw_only, jobs):
    """
    Runs the census and computes the three record tables.
    Returns the ATD, GHAT and HAT tables, the digraph documents and the completeness report.
    """
    cfg = CensusConfig(m=m, s_range=tuple(range(1, s_max + 1)), index_cap=index_cap, jobs=jobs, gw_only=gw_only)
    progress_bar = st.progress(0, text="Searching quotient cells...")

    def on_progress(done, total):
        progress_bar.progress(done / total, text=f"Searching quotient cells ({done}/{total})...")

    result = run_census(cfg, on_progress)
    progress_bar.progress(1.0, text="Computing census records...")
    atd, ghat, hat = emit_records(result)
    documents = {entry.name: write_digraph(entry.digraph, entry.name, entry.provenance) for entry in result.entries}
    report = completeness_report(result.cells, cfg.m, result.complete_orders())
    progress_bar.empty()
    return atd, ghat, hat, documents, report

# --- Sidebar for Interactive Controls ---
st.sidebar.header("🔁 Census Control Panel")
max_order = st.sidebar.number_input("Max order m", min_value=6, max_value=CENSUS_DEFAULTS['EXCEPTIONAL_ORDER'] - 1, value=24)
s_max = st.sidebar.slider("Max level s", 1, CENSUS_DEFAULTS['MAX_TABLE_S'], 4)
index_cap = st.sidebar.number_input("Quotient index cap", min_value=1, max_value=BUDGETS['QUOTIENT_MAX_INDEX'], value=128)
gw_only = st.sidebar.checkbox("Generalised wreath digraphs only", value=False)
jobs = st.sidebar.number_input("Worker processes", min_value=1, max_value=64, value=CENSUS_DEFAULTS['JOBS'])

# --- Main Application UI ---
st.title("🔁 Census of 2-Valent Arc-Transitive Digraphs")
st.markdown("Use the **Control Panel** on the left to set the census scope, then run the pipeline.")

if 'census' not in st.session_state:
    st.session_state.census = None

if st.button("▶️ Run / Refresh Census"):
    try:
        st.session_state.census = run_full_pipeline(int(max_order), s_max, int(index_cap), gw_only, int(jobs))
    except BudgetExceededError as exc:
        st.error(f"Search budget exhausted: {exc}")
    except AtdError as exc:
        st.error(str(exc))

if st.session_state.census is not None:
    atd, ghat, hat, documents, report = st.session_state.census
    summary = census_summary(atd, ghat, hat)

    col1, col2, col3, col4 = st.columns(4)
    col1.metric("2-ATDs", summary['atd_count'])
    col2.metric("Generalised wreath", summary['gw_count'])
    col3.metric("Arc-transitive 4-GHATs", summary['arc_transitive_count'])
    col4.metric("4-HATs", summary['hat_count'])

    col1, col2, col3 = st.columns(3)
    col1.metric("Non-abelian stabilisers", summary['non_abelian_count'],
                help=f"smallest order {summary['non_abelian_smallest']}" if summary['non_abelian_smallest'] else None)
    col2.metric("Non-self-opposite, AT underlying graph", summary['non_self_opposite_at_count'])
    col3.metric("HATs with non-solvable Aut", summary['hat_non_solvable_count'])

    st.header("📈 2-ATDs per Order")
    if atd.empty:
        st.warning("The census is empty for this scope.")
    else:
        counts = atd.groupby(['|V|', 's']).size().reset_index(name='count')
        counts['s'] = counts['s'].astype(str)
        fig = px.bar(counts, x='|V|', y='count', color='s', title='<b>2-ATDs by order and arc-transitivity level</b>')
        st.plotly_chart(fig, use_container_width=True)

    tab1, tab2, tab3, tab4 = st.tabs(["ATD", "GHAT", "HAT", "Completeness"])
    with tab1:
        st.dataframe(records_frame('ATD', atd), hide_index=True)
    with tab2:
        st.dataframe(records_frame('GHAT', ghat), hide_index=True)
    with tab3:
        st.dataframe(records_frame('HAT', hat), hide_index=True)
    with tab4:
        st.code(report)

    st.markdown("---")
    st.header("🔍 Digraph Detail")
    selected = st.selectbox("Select a 2-ATD:", options=list(atd['Name']))
    if selected:
        row = atd.set_index('Name').loc[selected]
        col1, col2, col3, col4 = st.columns(4)
        col1.metric("Order", int(row['|V|']))
        col2.metric("s", int(row['s']))
        col3.metric("Radius", int(row['Rad']))
        col4.metric("Attachment", f"{row['AtNo']} ({row['AtTy']})")
        col1, col2 = st.columns(2)
        with col1:
            st.subheader("Census Record")
            st.dataframe(records_frame('ATD', atd[atd['Name'] == selected]).T.rename(columns=lambda _: 'value'))
        with col2:
            st.subheader("Digraph Document")
            st.code(documents[selected])
