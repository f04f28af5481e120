class ManyVariables {
    static int churn(int seed) {
        int v0 = seed;
        int v1 = v0 + 1;
        int v2 = v1 + 2;
        int v3 = v2 + 3;
        int v4 = v3 + 4;
        int v5 = v4 + 5;
        int v6 = v5 + 6;
        int v7 = v6 + 0;
        int v8 = v7 + 1;
        int v9 = v8 + 2;
        int v10 = v9 + 3;
        int v11 = v10 + 4;
        int v12 = v11 + 5;
        int v13 = v12 + 6;
        int v14 = v13 + 0;
        int v15 = v14 + 1;
        int v16 = v15 + 2;
        int v17 = v16 + 3;
        int v18 = v17 + 4;
        int v19 = v18 + 5;
        int v20 = v19 + 6;
        int v21 = v20 + 0;
        int v22 = v21 + 1;
        int v23 = v22 + 2;
        int v24 = v23 + 3;
        int v25 = v24 + 4;
        int v26 = v25 + 5;
        int v27 = v26 + 6;
        int v28 = v27 + 0;
        int v29 = v28 + 1;
        int v30 = v29 + 2;
        int v31 = v30 + 3;
        int v32 = v31 + 4;
        int v33 = v32 + 5;
        int v34 = v33 + 6;
        int v35 = v34 + 0;
        int v36 = v35 + 1;
        int v37 = v36 + 2;
        int v38 = v37 + 3;
        int v39 = v38 + 4;
        int v40 = v39 + 5;
        int v41 = v40 + 6;
        int v42 = v41 + 0;
        int v43 = v42 + 1;
        int v44 = v43 + 2;
        int v45 = v44 + 3;
        int v46 = v45 + 4;
        int v47 = v46 + 5;
        int v48 = v47 + 6;
        int v49 = v48 + 0;
        int v50 = v49 + 1;
        int v51 = v50 + 2;
        int v52 = v51 + 3;
        int v53 = v52 + 4;
        int v54 = v53 + 5;
        int v55 = v54 + 6;
        int v56 = v55 + 0;
        int v57 = v56 + 1;
        int v58 = v57 + 2;
        int v59 = v58 + 3;
        int v60 = v59 + 4;
        int v61 = v60 + 5;
        int v62 = v61 + 6;
        int v63 = v62 + 0;
        int v64 = v63 + 1;
        int v65 = v64 + 2;
        int v66 = v65 + 3;
        int v67 = v66 + 4;
        int v68 = v67 + 5;
        int v69 = v68 + 6;
        int v70 = v69 + 0;
        int v71 = v70 + 1;
        int v72 = v71 + 2;
        int v73 = v72 + 3;
        int v74 = v73 + 4;
        int v75 = v74 + 5;
        int v76 = v75 + 6;
        int v77 = v76 + 0;
        int v78 = v77 + 1;
        int v79 = v78 + 2;
        int v80 = v79 + 3;
        int v81 = v80 + 4;
        int v82 = v81 + 5;
        int v83 = v82 + 6;
        int v84 = v83 + 0;
        int v85 = v84 + 1;
        int v86 = v85 + 2;
        int v87 = v86 + 3;
        int v88 = v87 + 4;
        int v89 = v88 + 5;
        int v90 = v89 + 6;
        int v91 = v90 + 0;
        int v92 = v91 + 1;
        int v93 = v92 + 2;
        int v94 = v93 + 3;
        int v95 = v94 + 4;
        int v96 = v95 + 5;
        int v97 = v96 + 6;
        int v98 = v97 + 0;
        int v99 = v98 + 1;
        int v100 = v99 + 2;
        int v101 = v100 + 3;
        int v102 = v101 + 4;
        int v103 = v102 + 5;
        int v104 = v103 + 6;
        int v105 = v104 + 0;
        int v106 = v105 + 1;
        int v107 = v106 + 2;
        int v108 = v107 + 3;
        int v109 = v108 + 4;
        int v110 = v109 + 5;
        int v111 = v110 + 6;
        int v112 = v111 + 0;
        int v113 = v112 + 1;
        int v114 = v113 + 2;
        int v115 = v114 + 3;
        int v116 = v115 + 4;
        int v117 = v116 + 5;
        int v118 = v117 + 6;
        int v119 = v118 + 0;
        int v120 = v119 + 1;
        int v121 = v120 + 2;
        int v122 = v121 + 3;
        int v123 = v122 + 4;
        int v124 = v123 + 5;
        int v125 = v124 + 6;
        int v126 = v125 + 0;
        int v127 = v126 + 1;
        int v128 = v127 + 2;
        int v129 = v128 + 3;
        int v130 = v129 + 4;
        int v131 = v130 + 5;
        int v132 = v131 + 6;
        int v133 = v132 + 0;
        int v134 = v133 + 1;
        int v135 = v134 + 2;
        int v136 = v135 + 3;
        int v137 = v136 + 4;
        int v138 = v137 + 5;
        int v139 = v138 + 6;
        int v140 = v139 + 0;
        int v141 = v140 + 1;
        int v142 = v141 + 2;
        int v143 = v142 + 3;
        int v144 = v143 + 4;
        int v145 = v144 + 5;
        int v146 = v145 + 6;
        int v147 = v146 + 0;
        int v148 = v147 + 1;
        int v149 = v148 + 2;
        while (v1 < v2) {
            v1 = v1 + v149;
        }
        return v1;
    }
}
